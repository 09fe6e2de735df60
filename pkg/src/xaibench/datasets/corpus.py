"""Normalized rationale-annotated corpora.

One JSONL record per instance:

    {"id": str, "words": [str], "label_name": str, "label_index": int,
     "rationale": [0|1], "split": "train"|"validation"|"test"}

Public dataset formats enter only through the converters in this
package; everything downstream consumes this form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from ..errors import DataError

SPLITS = ("train", "validation", "test")


@dataclass(frozen=True)
class RationaleInstance:
    id: str
    words: tuple[str, ...]
    label_name: str
    label_index: int
    word_rationale: tuple[int, ...]
    split: str = "train"

    def __post_init__(self) -> None:
        if len(self.word_rationale) != len(self.words):
            raise DataError(
                f"instance {self.id!r}: rationale length {len(self.word_rationale)} "
                f"!= word count {len(self.words)}"
            )
        if any(bit not in (0, 1) for bit in self.word_rationale):
            raise DataError(f"instance {self.id!r}: rationale bits must be 0/1")
        if self.split not in SPLITS:
            raise DataError(f"instance {self.id!r}: unknown split {self.split!r}")
        if self.label_index < 0:
            raise DataError(f"instance {self.id!r}: negative label index")

    @property
    def rationale_size(self) -> int:
        return sum(self.word_rationale)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "words": list(self.words),
            "label_name": self.label_name,
            "label_index": self.label_index,
            "rationale": list(self.word_rationale),
            "split": self.split,
        }


def average_rationale_length(instances: Sequence[RationaleInstance]) -> int:
    """Round-half-up mean size of the non-empty rationales, at least 1."""
    sizes = [inst.rationale_size for inst in instances if inst.rationale_size > 0]
    if not sizes:
        return 1
    return max(1, math.floor(sum(sizes) / len(sizes) + 0.5))


@dataclass(frozen=True)
class Corpus:
    name: str
    labels: tuple[str, ...]
    instances: tuple[RationaleInstance, ...]
    avg_rationale_len: int

    @classmethod
    def from_instances(
        cls, name: str, instances: Iterable[RationaleInstance], labels=None
    ) -> "Corpus":
        instances = tuple(instances)
        if labels is None:
            labels = _infer_labels(instances)
        labels = tuple(labels)
        for inst in instances:
            if inst.label_index >= len(labels):
                raise DataError(
                    f"instance {inst.id!r}: label index {inst.label_index} "
                    f"outside label set of size {len(labels)}"
                )
        return cls(
            name=name,
            labels=labels,
            instances=instances,
            avg_rationale_len=average_rationale_length(instances),
        )

    def filter(self, *, split=None, label=None) -> tuple[RationaleInstance, ...]:
        out = self.instances
        if split is not None:
            out = tuple(i for i in out if i.split == split)
        if label is not None:
            out = tuple(i for i in out if i.label_name == label)
        return out


def _infer_labels(instances: Sequence[RationaleInstance]) -> tuple[str, ...]:
    by_index: dict[int, str] = {}
    for inst in instances:
        seen = by_index.setdefault(inst.label_index, inst.label_name)
        if seen != inst.label_name:
            raise DataError(
                f"instance {inst.id!r}: label index {inst.label_index} maps to both "
                f"{seen!r} and {inst.label_name!r}"
            )
    if not by_index:
        return ()
    return tuple(
        by_index.get(i, f"label_{i}") for i in range(max(by_index) + 1)
    )


_REQUIRED_FIELDS = ("id", "words", "label_name", "label_index", "rationale", "split")


def load_corpus_jsonl(path, name: str | None = None) -> Corpus:
    """Read a normalized corpus; errors carry line numbers / instance ids."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"corpus file not found: {path}")
    instances = []
    with path.open(encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{line_no}: invalid JSON ({exc.msg})") from exc
            missing = [f for f in _REQUIRED_FIELDS if f not in record]
            if missing:
                raise DataError(f"{path}:{line_no}: missing fields {missing}")
            instances.append(
                RationaleInstance(
                    id=str(record["id"]),
                    words=tuple(str(w) for w in record["words"]),
                    label_name=str(record["label_name"]),
                    label_index=int(record["label_index"]),
                    word_rationale=tuple(int(b) for b in record["rationale"]),
                    split=str(record["split"]),
                )
            )
    return Corpus.from_instances(name or path.stem, instances)


def save_corpus_jsonl(instances: Iterable[RationaleInstance], path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        for inst in instances:
            handle.write(json.dumps(inst.to_json(), ensure_ascii=False) + "\n")
