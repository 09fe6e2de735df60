"""Rationales and metric results."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping, Optional

HIGHER_BETTER = "higher_better"
LOWER_BETTER = "lower_better"

AOPC_COMPR = "aopc_compr"
AOPC_SUFF = "aopc_suff"
TAUCORR_LOO = "taucorr_loo"
TOKEN_IOU = "token_iou"
TOKEN_F1 = "token_f1"
AUPRC = "auprc"

FAITHFULNESS_METRICS = (AOPC_COMPR, AOPC_SUFF, TAUCORR_LOO)
PLAUSIBILITY_METRICS = (TOKEN_IOU, TOKEN_F1, AUPRC)
METRICS = FAITHFULNESS_METRICS + PLAUSIBILITY_METRICS

METRIC_DIRECTIONS: Mapping[str, str] = {
    AOPC_COMPR: HIGHER_BETTER,
    AOPC_SUFF: LOWER_BETTER,
    TAUCORR_LOO: HIGHER_BETTER,
    TOKEN_IOU: HIGHER_BETTER,
    TOKEN_F1: HIGHER_BETTER,
    AUPRC: HIGHER_BETTER,
}


def canonical_metric(name: str) -> str:
    name = name.strip().lower()
    if name not in METRICS:
        raise ValueError(f"unknown metric {name!r}")
    return name


@dataclass(frozen=True)
class Rationale:
    """Discrete set of content-token ordinals supporting a prediction."""

    indices: frozenset[int]
    source: str = "predicted"  # predicted | human
    origin_k: Optional[int] = None


@dataclass(frozen=True)
class HumanRationale:
    """Annotator mask over content tokens (1 = relevant).

    ``dropped_words`` records rationale words lost to truncation during
    alignment; it is diagnostic only.
    """

    mask: tuple[int, ...]
    dropped_words: tuple[int, ...] = ()

    @property
    def indices(self) -> frozenset[int]:
        return frozenset(i for i, bit in enumerate(self.mask) if bit)

    @property
    def is_empty(self) -> bool:
        return not any(self.mask)


@dataclass(frozen=True)
class EvaluationScore:
    """Named metric value; value None encodes not-applicable/undefined."""

    metric: str
    value: Optional[float]
    direction: str

    def __post_init__(self) -> None:
        if self.direction not in (HIGHER_BETTER, LOWER_BETTER):
            raise ValueError(f"bad direction {self.direction!r}")

    def to_json(self) -> dict[str, Any]:
        return {"metric": self.metric, "value": self.value, "direction": self.direction}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "EvaluationScore":
        value = data["value"]
        return cls(
            metric=str(data["metric"]),
            value=None if value is None else float(value),
            direction=str(data["direction"]),
        )


def make_score(metric: str, value: Optional[float]) -> EvaluationScore:
    return EvaluationScore(
        metric=metric, value=value, direction=METRIC_DIRECTIONS[metric]
    )
