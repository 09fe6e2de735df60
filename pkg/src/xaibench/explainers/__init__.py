"""Post-hoc feature attribution methods."""

from __future__ import annotations

from typing import Optional

from ..errors import ConfigError
from ..models import DELETE, PredictionCache, TextModel, TokenizedInput
from .base import (
    GRADIENT,
    GRADIENT_X_INPUT,
    INTEGRATED_GRADIENTS,
    INTEGRATED_GRADIENTS_X_INPUT,
    LIME,
    LOO,
    METHOD_ALIASES,
    METHODS,
    PARTITION_SHAP,
    Explanation,
    canonical_method,
)
from .gradient import explain_gradient, explain_integrated_gradients, midpoint_alphas
from .lime import explain_lime
from .loo import explain_loo
from .partition import PartitionNode, build_partition_tree, explain_partition_shap


def explain(
    model: TextModel,
    x: TokenizedInput,
    target: int,
    method: str,
    *,
    removal: str = DELETE,
    seed: int = 0,
    ig_steps: int = 50,
    lime_samples: int = 1000,
    lime_kernel_width: float = 25.0,
    lime_l2: float = 1.0,
    cache: Optional[PredictionCache] = None,
) -> Explanation:
    """Run one attribution method by (canonical or alias) name."""
    try:
        name = canonical_method(method)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if name == GRADIENT:
        return explain_gradient(model, x, target, multiply_by_input=False)
    if name == GRADIENT_X_INPUT:
        return explain_gradient(model, x, target, multiply_by_input=True)
    if name == INTEGRATED_GRADIENTS:
        return explain_integrated_gradients(
            model, x, target, steps=ig_steps, multiply_by_input=False
        )
    if name == INTEGRATED_GRADIENTS_X_INPUT:
        return explain_integrated_gradients(
            model, x, target, steps=ig_steps, multiply_by_input=True
        )
    if name == LIME:
        return explain_lime(
            model,
            x,
            target,
            n_samples=lime_samples,
            kernel_width=lime_kernel_width,
            l2=lime_l2,
            seed=seed,
            removal=removal,
            cache=cache,
        )
    if name == PARTITION_SHAP:
        return explain_partition_shap(model, x, target, removal=removal, cache=cache)
    return explain_loo(model, x, target, removal=removal, cache=cache)


__all__ = [
    "Explanation",
    "GRADIENT",
    "GRADIENT_X_INPUT",
    "INTEGRATED_GRADIENTS",
    "INTEGRATED_GRADIENTS_X_INPUT",
    "LIME",
    "LOO",
    "METHODS",
    "METHOD_ALIASES",
    "PARTITION_SHAP",
    "PartitionNode",
    "build_partition_tree",
    "canonical_method",
    "explain",
    "explain_gradient",
    "explain_integrated_gradients",
    "explain_lime",
    "explain_loo",
    "explain_partition_shap",
    "midpoint_alphas",
]
