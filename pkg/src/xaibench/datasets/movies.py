"""Converter for the ERASER movie-review format.

Documents are whitespace-tokenized text files in a docs directory; the
annotation JSONL carries a sentiment classification (NEG/POS) and
evidence spans as [start_token, end_token) offsets into the document.
Evidence spans fill the word-level rationale mask; overlapping spans
union.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from ..errors import DataError
from .corpus import Corpus, RationaleInstance, load_corpus_jsonl, save_corpus_jsonl

LABELS = ("NEG", "POS")
_SPLIT_FROM_STEM = {"train": "train", "val": "validation", "dev": "validation", "test": "test"}


def _iter_evidences(record: dict):
    for group in record.get("evidences", []):
        if isinstance(group, dict):
            yield group
        else:
            yield from group


def convert_movies_eraser(
    docs_dir,
    annotations_path,
    out_path,
    *,
    split: Optional[str] = None,
) -> Corpus:
    """Convert one annotation file; split defaults from its file name."""
    docs_dir = Path(docs_dir)
    annotations_path = Path(annotations_path)
    if split is None:
        split = _SPLIT_FROM_STEM.get(annotations_path.stem.lower(), "train")

    instances = []
    with annotations_path.open(encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(
                    f"{annotations_path}:{line_no}: invalid JSON ({exc.msg})"
                ) from exc
            try:
                doc_id = str(record["annotation_id"])
                classification = str(record["classification"]).upper()
            except KeyError as exc:
                raise DataError(
                    f"{annotations_path}:{line_no}: missing field {exc}"
                ) from exc
            if classification not in LABELS:
                raise DataError(
                    f"instance {doc_id!r}: unknown classification {classification!r}"
                )
            doc_path = docs_dir / doc_id
            if not doc_path.exists():
                raise DataError(f"instance {doc_id!r}: document {doc_path} not found")
            words = doc_path.read_text(encoding="utf-8").split()
            mask = [0] * len(words)
            for evidence in _iter_evidences(record):
                start = int(evidence["start_token"])
                end = int(evidence["end_token"])
                if not (0 <= start < end <= len(words)):
                    raise DataError(
                        f"instance {doc_id!r}: evidence span [{start}, {end}) "
                        f"outside document of {len(words)} tokens"
                    )
                for i in range(start, end):
                    mask[i] = 1
            instances.append(
                RationaleInstance(
                    id=doc_id,
                    words=tuple(words),
                    label_name=classification,
                    label_index=LABELS.index(classification),
                    word_rationale=tuple(mask),
                    split=split,
                )
            )

    save_corpus_jsonl(instances, out_path)
    loaded = load_corpus_jsonl(out_path, name="movies")
    return Corpus.from_instances("movies", loaded.instances, labels=LABELS)
