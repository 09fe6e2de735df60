"""Independent oracles and generators used across the test suite.

Each oracle recomputes a quantity along a path that shares no code
with the implementation it checks: exhaustive ordering enumeration for
Owen values, O(n^2) pair counting for tau-b, threshold sweeps for
average precision, and central finite differences for gradients.
"""

from __future__ import annotations

import math

import numpy as np

from xaibench.explainers import build_partition_tree
from xaibench.models import (
    LexiconModel,
    LexiconModelConfig,
    apply_removal,
    predict,
    tokenize,
)

# -- brute-force Owen values ----------------------------------------------


def tree_consistent_orderings(node) -> list[list[int]]:
    """All leaf orders in which every subtree stays contiguous."""
    if node.is_leaf:
        return [[node.lo]]
    lefts = tree_consistent_orderings(node.left)
    rights = tree_consistent_orderings(node.right)
    out = []
    for a in lefts:
        for b in rights:
            out.append(a + b)
            out.append(b + a)
    return out


def brute_force_owen(model, x, target, removal="delete") -> list[float]:
    """Average marginal contribution over tree-consistent orderings."""
    n = x.n_content
    tree = build_partition_tree(n)
    mask_id = model.info().mask_token_id
    memo: dict[frozenset, float] = {}

    def value(coalition: frozenset) -> float:
        if coalition not in memo:
            ids = apply_removal(x, coalition, removal, mask_id)
            memo[coalition] = float(predict(model, [ids])[0, target])
        return memo[coalition]

    orderings = tree_consistent_orderings(tree)
    totals = [0.0] * n
    for ordering in orderings:
        prefix: frozenset = frozenset()
        for leaf in ordering:
            with_leaf = prefix | {leaf}
            totals[leaf] += value(with_leaf) - value(prefix)
            prefix = with_leaf
    return [t / len(orderings) for t in totals]


# -- tau-b by explicit pair counting ---------------------------------------


def tau_b_pair_counting(xs, ys):
    """tau-b from a double loop over all pairs; None when undefined."""
    n = len(xs)
    nc = nd = ties_x = ties_y = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = xs[i] - xs[j]
            dy = ys[i] - ys[j]
            if dx == 0:
                ties_x += 1
            if dy == 0:
                ties_y += 1
            if dx * dy > 0:
                nc += 1
            elif dx * dy < 0:
                nd += 1
    n0 = n * (n - 1) // 2
    denom_sq = (n0 - ties_x) * (n0 - ties_y)
    if denom_sq <= 0:
        return None
    return (nc - nd) / math.sqrt(denom_sq)


# -- average precision by threshold enumeration ----------------------------


def ap_threshold_enumeration(scores, mask) -> float:
    """Step-interpolated AP from an explicit threshold sweep."""
    n_relevant = sum(mask)
    assert n_relevant > 0
    area = 0.0
    previous_recall = 0.0
    for threshold in sorted(set(scores), reverse=True):
        kept = [i for i, s in enumerate(scores) if s >= threshold]
        true_positives = sum(mask[i] for i in kept)
        precision = true_positives / len(kept)
        recall = true_positives / n_relevant
        area += (recall - previous_recall) * precision
        previous_recall = recall
    return area


# -- finite differences -----------------------------------------------------


def finite_difference_gradient(prob_fn, embeddings: np.ndarray, step: float = 1e-4):
    """Central differences of prob_fn over every embedding coordinate."""
    grad = np.zeros_like(embeddings)
    for i in range(embeddings.shape[0]):
        for d in range(embeddings.shape[1]):
            plus = embeddings.copy()
            plus[i, d] += step
            minus = embeddings.copy()
            minus[i, d] -= step
            grad[i, d] = (prob_fn(plus) - prob_fn(minus)) / (2 * step)
    return grad


def max_relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    scale = np.maximum(np.abs(analytic), 1e-8)
    return float(np.max(np.abs(analytic - numeric) / scale))


# -- random model / instance generation ------------------------------------

_WORD_POOL = [
    "great", "terrible", "movie", "plot", "boring", "fun", "acting",
    "awful", "bright", "dull", "song", "noise", "charm", "waste",
]


def random_lexicon(rng: np.random.Generator, allow_zero=True) -> LexiconModel:
    size = int(rng.integers(4, len(_WORD_POOL) + 1))
    words = list(rng.choice(_WORD_POOL, size=size, replace=False))
    weights = {}
    for word in words:
        if allow_zero and rng.random() < 0.25:
            weights[word] = 0.0
        else:
            weights[word] = float(np.round(rng.uniform(-3, 3), 3))
    intercept = float(np.round(rng.uniform(-1, 1), 3))
    return LexiconModel(LexiconModelConfig(weights=weights, intercept=intercept))


def random_instance(model: LexiconModel, rng: np.random.Generator, n_min=2, n_max=8):
    known = list(model.config.weights)
    length = int(rng.integers(n_min, n_max + 1))
    words = [str(w) for w in rng.choice(known, size=length, replace=True)]
    return tokenize(model, [" ".join(words)])[0]


# -- sub-word tokenizer stub -------------------------------------------------


class SubwordStubModel:
    """Tokenizer-only stub: CLS/SEP frame, words chopped into 4-char pieces.

    Exercises word-id bookkeeping (sub-word splits, truncation) without
    a real scoring model; predict/gradients are unsupported.
    """

    CLS, SEP = 0, 1

    def __init__(self, max_length: int = 64, piece: int = 4):
        self.max_length = max_length
        self.piece = piece
        from xaibench.models import ModelInfo

        self._info = ModelInfo(
            model_id="stub:subword",
            labels=("a", "b"),
            capabilities=frozenset({"predict"}),
            max_length=max_length,
            special_token_ids=frozenset({self.CLS, self.SEP}),
        )

    def info(self):
        return self._info

    def tokenize_batch(self, inputs, *, truncate: bool = False):
        from xaibench.errors import TruncationError
        from xaibench.models import TokenizedInput

        out = []
        for pos, item in enumerate(inputs):
            words = item.split() if isinstance(item, str) else [str(w) for w in item]
            with_ids = not isinstance(item, str)
            ids: list[int] = [self.CLS]
            strings = ["[CLS]"]
            word_ids: list = [None]
            for w_index, word in enumerate(words):
                for start in range(0, len(word), self.piece):
                    ids.append(2 + len(ids))
                    strings.append(word[start : start + self.piece])
                    word_ids.append(w_index if with_ids else None)
            ids.append(self.SEP)
            strings.append("[SEP]")
            word_ids.append(None)
            if len(ids) > self.max_length:
                if not truncate:
                    raise TruncationError(f"input {pos} overflows")
                ids = ids[: self.max_length - 1] + [self.SEP]
                strings = strings[: self.max_length - 1] + ["[SEP]"]
                word_ids = word_ids[: self.max_length - 1] + [None]
            out.append(
                TokenizedInput(
                    token_ids=tuple(ids),
                    token_strings=tuple(strings),
                    content_indices=tuple(range(1, len(ids) - 1)),
                    word_ids=tuple(word_ids) if with_ids else None,
                )
            )
        return out

    def predict_ids(self, batch):
        raise NotImplementedError("tokenizer-only stub")
