"""Attribution record shared by all explanation methods."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

GRADIENT = "gradient"
GRADIENT_X_INPUT = "gradient_x_input"
INTEGRATED_GRADIENTS = "integrated_gradients"
INTEGRATED_GRADIENTS_X_INPUT = "integrated_gradients_x_input"
LIME = "lime"
PARTITION_SHAP = "partition_shap"
LOO = "loo"

METHODS = (
    GRADIENT,
    GRADIENT_X_INPUT,
    INTEGRATED_GRADIENTS,
    INTEGRATED_GRADIENTS_X_INPUT,
    LIME,
    PARTITION_SHAP,
    LOO,
)

METHOD_ALIASES = {
    "g": GRADIENT,
    "gxi": GRADIENT_X_INPUT,
    "ig": INTEGRATED_GRADIENTS,
    "igxi": INTEGRATED_GRADIENTS_X_INPUT,
    "shap": PARTITION_SHAP,
}


def canonical_method(name: str) -> str:
    """Resolve CLI aliases; raises KeyError-style ValueError on unknowns."""
    name = name.strip().lower()
    name = METHOD_ALIASES.get(name, name)
    if name not in METHODS:
        raise ValueError(f"unknown explanation method {name!r}")
    return name


@dataclass(frozen=True)
class Explanation:
    """Continuous per-content-token attribution for one (instance, target)."""

    method: str
    target: int
    token_strings: tuple[str, ...]
    scores: tuple[float, ...]
    diagnostics: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown explanation method {self.method!r}")
        if len(self.scores) != len(self.token_strings):
            raise ValueError("one score per content token required")
        if any(not math.isfinite(s) for s in self.scores):
            raise ValueError("attribution scores must be finite")

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "target": self.target,
            "tokens": list(self.token_strings),
            "scores": list(self.scores),
            "diagnostics": dict(self.diagnostics),
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Explanation":
        return cls(
            method=str(data["method"]),
            target=int(data["target"]),
            token_strings=tuple(str(t) for t in data["tokens"]),
            scores=tuple(float(s) for s in data["scores"]),
            diagnostics=dict(data.get("diagnostics", {})),
        )
