"""Tie-corrected Kendall rank correlation (tau-b)."""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np


def _tie_term(values: np.ndarray) -> int:
    _, counts = np.unique(values, return_counts=True)
    return int(np.sum(counts * (counts - 1) // 2))


def kendall_tau_b(xs: Sequence[float], ys: Sequence[float]) -> Optional[float]:
    """tau-b of two equal-length vectors; None when either is constant.

    tau_b = (nc - nd) / sqrt((n0 - t_x) * (n0 - t_y)) with nc/nd the
    concordant/discordant pair counts, n0 = n(n-1)/2, and t_* the
    within-vector tie-pair counts.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("inputs must be equal-length 1-D vectors")
    n = x.size
    if n < 2:
        return None
    iu = np.triu_indices(n, k=1)
    sx = np.sign(x[:, None] - x[None, :])[iu]
    sy = np.sign(y[:, None] - y[None, :])[iu]
    product = sx * sy
    nc = int(np.sum(product > 0))
    nd = int(np.sum(product < 0))
    n0 = n * (n - 1) // 2
    denom_sq = (n0 - _tie_term(x)) * (n0 - _tie_term(y))
    if denom_sq <= 0:
        return None
    return (nc - nd) / math.sqrt(denom_sq)
