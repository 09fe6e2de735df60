"""Run configuration shared by the workflow runner and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import ConfigError
from ..evaluation import METRICS, canonical_metric
from ..explainers import METHODS, canonical_method
from ..models import REMOVAL_STRATEGIES

GOLD_TARGET = "gold"


@dataclass(frozen=True)
class SampleSpec:
    """Which corpus instances a dataset run covers."""

    count: Optional[int] = None
    label: Optional[str] = None
    split: Optional[str] = None


@dataclass(frozen=True)
class RunConfig:
    model_spec: Optional[str] = None
    methods: tuple[str, ...] = METHODS
    metrics: tuple[str, ...] = METRICS
    target_policy: Union[str, int] = GOLD_TARGET
    removal: str = "delete"
    seed: int = 0
    sample: SampleSpec = field(default_factory=SampleSpec)
    workers: int = 1
    ig_steps: int = 50
    lime_samples: int = 1000
    lime_kernel_width: float = 25.0
    lime_l2: float = 1.0
    include_instances: bool = True

    def __post_init__(self) -> None:
        if not self.methods:
            raise ConfigError("at least one explanation method is required")
        if not self.metrics:
            raise ConfigError("at least one metric is required")
        try:
            object.__setattr__(
                self, "methods", tuple(canonical_method(m) for m in self.methods)
            )
            object.__setattr__(
                self, "metrics", tuple(canonical_metric(m) for m in self.metrics)
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.removal not in REMOVAL_STRATEGIES:
            raise ConfigError(f"unknown removal strategy {self.removal!r}")
        if isinstance(self.target_policy, str) and self.target_policy != GOLD_TARGET:
            raise ConfigError(
                f"target policy must be {GOLD_TARGET!r} or a class index, "
                f"got {self.target_policy!r}"
            )
        if isinstance(self.target_policy, int) and self.target_policy < 0:
            raise ConfigError("fixed target must be a non-negative class index")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.ig_steps < 1:
            raise ConfigError("ig_steps must be >= 1")

    def to_json(self) -> dict:
        return {
            "model": self.model_spec,
            "methods": list(self.methods),
            "metrics": list(self.metrics),
            "target_policy": self.target_policy,
            "removal": self.removal,
            "seed": self.seed,
            "sample": {
                "count": self.sample.count,
                "label": self.sample.label,
                "split": self.sample.split,
            },
            "workers": self.workers,
            "ig_steps": self.ig_steps,
            "lime_samples": self.lime_samples,
            "lime_kernel_width": self.lime_kernel_width,
            "lime_l2": self.lime_l2,
        }


def parse_target_policy(raw: str) -> Union[str, int]:
    raw = raw.strip().lower()
    if raw == GOLD_TARGET:
        return GOLD_TARGET
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"target must be 'gold' or a class index, got {raw!r}") from exc
