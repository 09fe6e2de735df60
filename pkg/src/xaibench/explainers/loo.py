"""Leave-one-out importance: probability drop when a token is omitted."""

from __future__ import annotations

from typing import Optional

from ..models import (
    DELETE,
    PredictionCache,
    TextModel,
    TokenizedInput,
    apply_removal,
    predict,
)
from .base import LOO, Explanation


def explain_loo(
    model: TextModel,
    x: TokenizedInput,
    target: int,
    *,
    removal: str = DELETE,
    cache: Optional[PredictionCache] = None,
) -> Explanation:
    """score_i = f(x) - f(x without token i), one removal at a time."""
    if x.n_content < 1:
        raise ValueError("need at least one content token")
    cache = cache if cache is not None else PredictionCache()
    mask_id = model.info().mask_token_id
    n = x.n_content
    everything = set(range(n))
    sequences = [x.token_ids]
    sequences += [
        apply_removal(x, everything - {i}, removal, mask_id) for i in range(n)
    ]
    before = cache.evaluations
    probabilities = predict(model, sequences, cache)
    full = float(probabilities[0, target])
    scores = tuple(full - float(probabilities[1 + i, target]) for i in range(n))
    return Explanation(
        method=LOO,
        target=target,
        token_strings=x.content_token_strings,
        scores=scores,
        diagnostics={
            "samples": n + 1,
            "model_evaluations": cache.evaluations - before,
        },
    )
