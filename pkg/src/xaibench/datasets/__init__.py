"""Rationale-annotated corpora: normalized form, converters, alignment."""

from .align import align_rationale
from .corpus import (
    SPLITS,
    Corpus,
    RationaleInstance,
    average_rationale_length,
    load_corpus_jsonl,
    save_corpus_jsonl,
)
from .hatexplain import convert_hatexplain
from .movies import convert_movies_eraser

__all__ = [
    "Corpus",
    "RationaleInstance",
    "SPLITS",
    "align_rationale",
    "average_rationale_length",
    "convert_hatexplain",
    "convert_movies_eraser",
    "load_corpus_jsonl",
    "save_corpus_jsonl",
]
