"""Faithfulness metrics: do explanations reflect the model's behavior?

Comprehensiveness and sufficiency sweep the top-k% positive tokens
(k = 10 .. 100, step 10) and average the probability drops, the
area-over-the-perturbation-curve aggregation.  The LOO correlation
metric compares the explanation ranking against per-token omission
effects with tau-b.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..explainers import Explanation, explain_loo
from ..models import (
    DELETE,
    PredictionCache,
    TextModel,
    TokenizedInput,
    apply_removal,
    predict,
)
from .discretize import positive_topk_fraction
from .kendall import kendall_tau_b
from .types import AOPC_COMPR, AOPC_SUFF, TAUCORR_LOO, EvaluationScore, make_score

K_SWEEP = tuple(range(10, 101, 10))


def _aopc(
    model: TextModel,
    x: TokenizedInput,
    expl: Explanation,
    target: int,
    *,
    keep_rationale: bool,
    removal: str,
    cache: Optional[PredictionCache],
) -> float:
    if len(expl.scores) != x.n_content:
        raise ValueError("explanation does not cover this input's content tokens")
    mask_id = model.info().mask_token_id
    everything = set(range(x.n_content))
    sequences = [x.token_ids]
    for k in K_SWEEP:
        rationale = positive_topk_fraction(expl, k).indices
        keep = rationale if keep_rationale else everything - rationale
        sequences.append(apply_removal(x, keep, removal, mask_id))
    probabilities = predict(model, sequences, cache)
    full = float(probabilities[0, target])
    drops = [full - float(probabilities[1 + i, target]) for i in range(len(K_SWEEP))]
    return float(np.mean(drops))


def aopc_comprehensiveness(
    model: TextModel,
    x: TokenizedInput,
    expl: Explanation,
    target: int,
    *,
    removal: str = DELETE,
    cache: Optional[PredictionCache] = None,
) -> EvaluationScore:
    """Mean probability drop when the predicted rationale is removed."""
    value = _aopc(
        model, x, expl, target, keep_rationale=False, removal=removal, cache=cache
    )
    return make_score(AOPC_COMPR, value)


def aopc_sufficiency(
    model: TextModel,
    x: TokenizedInput,
    expl: Explanation,
    target: int,
    *,
    removal: str = DELETE,
    cache: Optional[PredictionCache] = None,
) -> EvaluationScore:
    """Mean probability drop when only the predicted rationale is kept."""
    value = _aopc(
        model, x, expl, target, keep_rationale=True, removal=removal, cache=cache
    )
    return make_score(AOPC_SUFF, value)


def taucorr_loo(
    model: TextModel,
    x: TokenizedInput,
    expl: Explanation,
    target: int,
    *,
    removal: str = DELETE,
    cache: Optional[PredictionCache] = None,
) -> EvaluationScore:
    """tau-b between the explanation and leave-one-out importance.

    Constant vectors make the correlation undefined; the result is then
    reported as missing, never coerced to 0.
    """
    if x.n_content < 2:
        raise ValueError("taucorr_loo needs at least two content tokens")
    loo = explain_loo(model, x, target, removal=removal, cache=cache)
    tau = kendall_tau_b(expl.scores, loo.scores)
    return make_score(TAUCORR_LOO, tau)
