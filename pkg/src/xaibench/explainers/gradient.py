"""Gradient and path-integrated gradient attributions.

Both methods read per-token embedding gradients from the model.  The
plain variants aggregate a token's gradient vector with the L2 norm
(always non-negative); the x-input variants keep the signed dot
product with the input (or input-minus-baseline) embedding.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ..errors import ConfigError
from ..models import TextModel, TokenizedInput, default_baseline_ids, embedding_gradients
from .base import (
    GRADIENT,
    GRADIENT_X_INPUT,
    INTEGRATED_GRADIENTS,
    INTEGRATED_GRADIENTS_X_INPUT,
    Explanation,
)


def explain_gradient(
    model: TextModel,
    x: TokenizedInput,
    target: int,
    *,
    multiply_by_input: bool = False,
) -> Explanation:
    """Saliency at the input point (alpha = 1, baseline irrelevant)."""
    baseline = default_baseline_ids(x, model.info())
    bundle = embedding_gradients(model, x.token_ids, baseline, target, [1.0])
    grad = bundle.grads[0]
    if multiply_by_input:
        per_token = np.sum(grad * bundle.input_embeddings, axis=1)
    else:
        per_token = np.linalg.norm(grad, axis=1)
    content = list(x.content_indices)
    return Explanation(
        method=GRADIENT_X_INPUT if multiply_by_input else GRADIENT,
        target=target,
        token_strings=x.content_token_strings,
        scores=tuple(float(s) for s in per_token[content]),
        diagnostics={"steps": 1, "model_evaluations": 1},
    )


def midpoint_alphas(steps: int) -> tuple[float, ...]:
    """Midpoint quadrature grid over (0, 1]: (k - 1/2) / steps."""
    return tuple((k - 0.5) / steps for k in range(1, steps + 1))


def explain_integrated_gradients(
    model: TextModel,
    x: TokenizedInput,
    target: int,
    *,
    steps: int = 50,
    multiply_by_input: bool = True,
    baseline_ids: Optional[Sequence[int]] = None,
) -> Explanation:
    """Average path gradient from the baseline to the input.

    The x-input variant (default) multiplies by (input - baseline) and
    satisfies completeness: the scores sum to f(x) - f(baseline) as the
    step count grows.
    """
    if steps < 1:
        raise ConfigError("integrated gradients needs steps >= 1")
    if baseline_ids is None:
        baseline_ids = default_baseline_ids(x, model.info())
    elif len(baseline_ids) != len(x.token_ids):
        raise ConfigError("baseline must match the input length")
    bundle = embedding_gradients(
        model, x.token_ids, baseline_ids, target, midpoint_alphas(steps)
    )
    avg_grad = bundle.grads.mean(axis=0)
    if multiply_by_input:
        delta = bundle.input_embeddings - bundle.baseline_embeddings
        per_token = np.sum(delta * avg_grad, axis=1)
    else:
        per_token = np.linalg.norm(avg_grad, axis=1)
    content = list(x.content_indices)
    return Explanation(
        method=INTEGRATED_GRADIENTS_X_INPUT
        if multiply_by_input
        else INTEGRATED_GRADIENTS,
        target=target,
        token_strings=x.content_token_strings,
        scores=tuple(float(s) for s in per_token[content]),
        diagnostics={"steps": steps, "model_evaluations": steps},
    )
