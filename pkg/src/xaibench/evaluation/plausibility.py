"""Plausibility metrics: do explanations match human rationales?

IOU and token F1 compare a discrete predicted rationale against the
human mask.  AUPRC scores the full continuous ranking: tokens are
ordered by attribution (ties toward the lower index) and the area is
the step-interpolated average precision with human tokens as ground
truth.  Instances without a human rationale are not-applicable and
yield missing values.
"""

from __future__ import annotations

from ..explainers import Explanation
from .types import (
    AUPRC,
    TOKEN_F1,
    TOKEN_IOU,
    EvaluationScore,
    HumanRationale,
    Rationale,
    make_score,
)


def token_iou(pred: Rationale, human: HumanRationale) -> EvaluationScore:
    if human.is_empty:
        return make_score(TOKEN_IOU, None)
    truth = human.indices
    union = pred.indices | truth
    value = len(pred.indices & truth) / len(union) if union else 0.0
    return make_score(TOKEN_IOU, value)


def token_f1(pred: Rationale, human: HumanRationale) -> EvaluationScore:
    if human.is_empty:
        return make_score(TOKEN_F1, None)
    truth = human.indices
    overlap = len(pred.indices & truth)
    # harmonic mean of token precision and recall reduces to
    # 2|I| / (|pred| + |human|), which also covers the P = R = 0 case
    value = 2 * overlap / (len(pred.indices) + len(truth))
    return make_score(TOKEN_F1, value)


def auprc(expl: Explanation, human: HumanRationale) -> EvaluationScore:
    if len(human.mask) != len(expl.scores):
        raise ValueError("human mask does not cover this explanation's tokens")
    if human.is_empty:
        return make_score(AUPRC, None)
    n_relevant = len(human.indices)
    order = sorted(range(len(expl.scores)), key=lambda i: (-expl.scores[i], i))
    hits = 0
    area = 0.0
    for rank, index in enumerate(order, start=1):
        if human.mask[index]:
            hits += 1
            area += (hits / rank) * (1.0 / n_relevant)
    return make_score(AUPRC, area)
