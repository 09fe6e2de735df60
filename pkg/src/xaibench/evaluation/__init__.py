"""Faithfulness and plausibility metrics over explanations."""

from .discretize import discretize_topk, positive_topk_fraction
from .faithfulness import (
    K_SWEEP,
    aopc_comprehensiveness,
    aopc_sufficiency,
    taucorr_loo,
)
from .kendall import kendall_tau_b
from .plausibility import auprc, token_f1, token_iou
from .types import (
    AOPC_COMPR,
    AOPC_SUFF,
    AUPRC,
    FAITHFULNESS_METRICS,
    HIGHER_BETTER,
    LOWER_BETTER,
    METRIC_DIRECTIONS,
    METRICS,
    PLAUSIBILITY_METRICS,
    TAUCORR_LOO,
    TOKEN_F1,
    TOKEN_IOU,
    EvaluationScore,
    HumanRationale,
    Rationale,
    canonical_metric,
    make_score,
)

__all__ = [
    "AOPC_COMPR",
    "AOPC_SUFF",
    "AUPRC",
    "EvaluationScore",
    "FAITHFULNESS_METRICS",
    "HIGHER_BETTER",
    "HumanRationale",
    "K_SWEEP",
    "LOWER_BETTER",
    "METRICS",
    "METRIC_DIRECTIONS",
    "PLAUSIBILITY_METRICS",
    "Rationale",
    "TAUCORR_LOO",
    "TOKEN_F1",
    "TOKEN_IOU",
    "aopc_comprehensiveness",
    "aopc_sufficiency",
    "auprc",
    "canonical_metric",
    "discretize_topk",
    "kendall_tau_b",
    "make_score",
    "positive_topk_fraction",
    "taucorr_loo",
    "token_f1",
    "token_iou",
]
