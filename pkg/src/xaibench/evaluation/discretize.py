"""Turn continuous attributions into discrete rationales.

Only strictly positive scores qualify (negative and zero contributions
pull away from, or do nothing for, the target class).  Ranking ties are
broken toward the lower content-token index so results are fully
deterministic.
"""

from __future__ import annotations

from ..explainers import Explanation
from .types import Rationale


def _positives_ranked(expl: Explanation) -> list[int]:
    return sorted(
        (i for i, s in enumerate(expl.scores) if s > 0),
        key=lambda i: (-expl.scores[i], i),
    )


def positive_topk_fraction(expl: Explanation, k_percent: int) -> Rationale:
    """Top ceil(k% * P) of the P positive-score tokens."""
    if not isinstance(k_percent, int) or not 10 <= k_percent <= 100:
        raise ValueError(f"k_percent must be an integer in [10, 100], got {k_percent!r}")
    ranked = _positives_ranked(expl)
    # ceil(k% * P) in exact integer arithmetic
    count = (k_percent * len(ranked) + 99) // 100
    return Rationale(
        indices=frozenset(ranked[:count]), source="predicted", origin_k=k_percent
    )


def discretize_topk(expl: Explanation, k: int) -> Rationale:
    """Top min(K, number of positives) positive-score tokens."""
    if k < 1:
        raise ValueError(f"K must be >= 1, got {k}")
    ranked = _positives_ranked(expl)
    return Rationale(indices=frozenset(ranked[:k]), source="predicted", origin_k=k)
