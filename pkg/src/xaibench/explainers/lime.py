"""Local linear surrogate fitted on token-presence perturbations.

Perturbed inputs are binary presence vectors over the content tokens.
Each sample removes a uniformly drawn number of tokens (at least one,
never all); proximity to the unperturbed instance is measured by
cosine distance between the presence vector and the all-ones vector,
turned into a sample weight with an RBF kernel.  The attribution
scores are the coefficients of a weighted ridge regression (intercept
unpenalized) from presence vectors to target-class probability.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from ..errors import ConfigError, NumericError
from ..models import (
    DELETE,
    PredictionCache,
    TextModel,
    TokenizedInput,
    apply_removal,
    predict,
)
from .base import LIME, Explanation

DEFAULT_SAMPLES = 1000
DEFAULT_KERNEL_WIDTH = 25.0
DEFAULT_L2 = 1.0


def _proximity_weight(presence: np.ndarray, kernel_width: float) -> float:
    """exp(-D^2 / kernel_width^2), D = cosine distance to all-ones."""
    n = presence.size
    k = float(presence.sum())
    distance = 1.0 if k == 0 else 1.0 - math.sqrt(k / n)
    return math.exp(-(distance**2) / kernel_width**2)


def _solve_weighted_ridge(
    design: np.ndarray, y: np.ndarray, weights: np.ndarray, l2: float
) -> tuple[np.ndarray, float, float]:
    """Coefficients, intercept and weighted R^2 of the surrogate fit."""
    m, n = design.shape
    A = np.hstack([design, np.ones((m, 1))])
    AtW = A.T * weights
    penalty = np.diag([l2] * n + [0.0])
    try:
        solution = np.linalg.solve(AtW @ A + penalty, AtW @ y)
    except np.linalg.LinAlgError as exc:
        raise NumericError(
            "singular normal equations in the surrogate fit; increase l2"
        ) from exc
    if not np.all(np.isfinite(solution)):
        raise NumericError("non-finite surrogate coefficients; increase l2")
    fitted = A @ solution
    y_bar = float(np.average(y, weights=weights))
    ss_res = float(np.sum(weights * (y - fitted) ** 2))
    ss_tot = float(np.sum(weights * (y - y_bar) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return solution[:n], float(solution[n]), r2


def explain_lime(
    model: TextModel,
    x: TokenizedInput,
    target: int,
    *,
    n_samples: int = DEFAULT_SAMPLES,
    kernel_width: float = DEFAULT_KERNEL_WIDTH,
    l2: float = DEFAULT_L2,
    seed: int = 0,
    removal: str = DELETE,
    cache: Optional[PredictionCache] = None,
) -> Explanation:
    n = x.n_content
    if n < 1:
        raise ValueError("need at least one content token")
    cache = cache if cache is not None else PredictionCache()
    mask_id = model.info().mask_token_id

    if n == 1:
        # Degenerate instance: fit the presence/absence pair directly.
        presence = np.array([[1.0], [0.0]])
        used_samples = 2
    else:
        if n_samples < n + 2:
            raise ConfigError(
                f"lime needs n_samples >= {n + 2} for {n} tokens, got {n_samples}"
            )
        rng = np.random.default_rng(seed)
        presence = np.ones((n_samples + 1, n))
        for row in range(1, n_samples + 1):
            n_masked = int(rng.integers(1, n))
            masked = rng.choice(n, size=n_masked, replace=False)
            presence[row, masked] = 0.0
        used_samples = n_samples + 1

    sequences = [
        apply_removal(x, np.flatnonzero(row), removal, mask_id) for row in presence
    ]
    before = cache.evaluations
    probabilities = predict(model, sequences, cache)
    y = probabilities[:, target]
    weights = np.array([_proximity_weight(row, kernel_width) for row in presence])

    coef, intercept, r2 = _solve_weighted_ridge(presence, y, weights, l2)
    return Explanation(
        method=LIME,
        target=target,
        token_strings=x.content_token_strings,
        scores=tuple(float(c) for c in coef),
        diagnostics={
            "samples": used_samples,
            "seed": seed,
            "kernel_width": kernel_width,
            "l2": l2,
            "surrogate_intercept": intercept,
            "surrogate_r2": r2,
            "model_evaluations": cache.evaluations - before,
        },
    )
