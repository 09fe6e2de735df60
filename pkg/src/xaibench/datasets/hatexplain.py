"""Converter for the HateXplain release format.

The raw file is one JSON object keyed by post id; each record carries
``post_tokens``, per-annotator ``annotators[*].label`` and word-level
``rationales`` (one 0/1 array per rationale annotator, present only for
non-normal posts).  An instance keeps the label an absolute majority of
annotators chose and is skipped as undecided otherwise.  A token enters
the aggregated rationale when at least half (rounded up) of the
rationale annotators marked it; ``rationale_mode="union"`` relaxes this
to any annotator.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from pathlib import Path
from typing import Optional

from ..errors import DataError
from .corpus import Corpus, RationaleInstance, load_corpus_jsonl, save_corpus_jsonl

LABELS = ("normal", "offensive", "hateful")
_LABEL_NORMALIZATION = {
    "normal": "normal",
    "offensive": "offensive",
    "hatespeech": "hateful",
    "hateful": "hateful",
}
_SPLIT_NAMES = {"train": "train", "val": "validation", "validation": "validation", "test": "test"}


def _majority_label(annotator_labels: list[str], post_id: str) -> Optional[str]:
    votes = Counter()
    for raw in annotator_labels:
        normalized = _LABEL_NORMALIZATION.get(str(raw).lower())
        if normalized is None:
            raise DataError(f"post {post_id!r}: unknown label {raw!r}")
        votes[normalized] += 1
    label, count = votes.most_common(1)[0]
    if count * 2 > len(annotator_labels):
        return label
    return None  # undecided


def _aggregate_rationale(
    rationales: list[list[int]], n_tokens: int, post_id: str, mode: str
) -> tuple[int, ...]:
    if not rationales:
        return (0,) * n_tokens
    counts = [0] * n_tokens
    for array in rationales:
        if len(array) < n_tokens:
            array = list(array) + [0] * (n_tokens - len(array))
        for i in range(n_tokens):
            if int(array[i]):
                counts[i] += 1
    if mode == "union":
        threshold = 1
    elif mode == "majority":
        threshold = math.ceil(len(rationales) / 2)
    else:
        raise DataError(f"unknown rationale_mode {mode!r}")
    return tuple(1 if c >= threshold else 0 for c in counts)


def convert_hatexplain(
    raw_json_path,
    out_path,
    *,
    rationale_mode: str = "majority",
    splits_path=None,
) -> Corpus:
    """Convert a HateXplain dump to normalized JSONL and load it back.

    ``splits_path`` may point to the release's post-id division file
    ({"train": [...], "val": [...], "test": [...]}); without it every
    instance lands in the train split.
    """
    raw_json_path = Path(raw_json_path)
    try:
        raw = json.loads(raw_json_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read HateXplain file {raw_json_path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise DataError("HateXplain dump must be a JSON object keyed by post id")

    split_of: dict[str, str] = {}
    if splits_path is not None:
        divisions = json.loads(Path(splits_path).read_text(encoding="utf-8"))
        for raw_split, ids in divisions.items():
            split = _SPLIT_NAMES.get(raw_split)
            if split is None:
                raise DataError(f"unknown split name {raw_split!r} in {splits_path}")
            for post_id in ids:
                split_of[str(post_id)] = split

    label_index = {name: i for i, name in enumerate(LABELS)}
    instances = []
    for post_id, record in raw.items():
        try:
            tokens = [str(t) for t in record["post_tokens"]]
            annotator_labels = [a["label"] for a in record["annotators"]]
            rationales = record.get("rationales", [])
        except (KeyError, TypeError) as exc:
            raise DataError(f"post {post_id!r}: missing field {exc}") from exc
        label = _majority_label(annotator_labels, post_id)
        if label is None:
            continue
        instances.append(
            RationaleInstance(
                id=str(post_id),
                words=tuple(tokens),
                label_name=label,
                label_index=label_index[label],
                word_rationale=_aggregate_rationale(
                    rationales, len(tokens), post_id, rationale_mode
                ),
                split=split_of.get(str(post_id), "train"),
            )
        )

    save_corpus_jsonl(instances, out_path)
    loaded = load_corpus_jsonl(out_path, name="hatexplain")
    # keep the full label set even when a split lacks some class
    return Corpus.from_instances("hatexplain", loaded.instances, labels=LABELS)
