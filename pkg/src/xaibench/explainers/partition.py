"""Owen-value attribution over a balanced contiguous partition tree.

Tokens are organized in a binary hierarchy of contiguous ranges.  The
attribution of a leaf is its Shapley value restricted to coalition
orders that respect the hierarchy: every ancestor's sibling subtree
enters either entirely before or entirely after the leaf, each with
probability 1/2 independently.  Writing S_1 .. S_k for the sibling
subtrees along the leaf's root path, the leaf value is

    phi_i = 2^-k * sum over on/off patterns c of
            v(C_c + {i}) - v(C_c),   C_c = union of the "on" siblings,

with v(S) the target-class probability of the input reduced to the
content tokens in S.  Summed over leaves this telescopes to
v(everything) - v(empty), so additivity is exact up to float error.
The coalition evaluations are batched and memoized through the
prediction cache.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..models import (
    DELETE,
    PredictionCache,
    TextModel,
    TokenizedInput,
    apply_removal,
    predict,
)
from .base import PARTITION_SHAP, Explanation


@dataclass(frozen=True)
class PartitionNode:
    """Contiguous content-ordinal range [lo, hi); leaves are single tokens."""

    lo: int
    hi: int
    left: Optional["PartitionNode"] = None
    right: Optional["PartitionNode"] = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def size(self) -> int:
        return self.hi - self.lo

    def leaves(self) -> range:
        return range(self.lo, self.hi)


def build_partition_tree(n_tokens: int) -> PartitionNode:
    """Balanced bisection: a range of length m splits after ceil(m / 2)."""
    if n_tokens < 1:
        raise ValueError("partition tree needs at least one token")

    def split(lo: int, hi: int) -> PartitionNode:
        if hi - lo == 1:
            return PartitionNode(lo, hi)
        mid = lo + (hi - lo + 1) // 2
        return PartitionNode(lo, hi, split(lo, mid), split(mid, hi))

    return split(0, n_tokens)


def _leaf_contexts(
    tree: PartitionNode,
) -> dict[int, list[tuple[frozenset[int], float]]]:
    """Per leaf: the weighted ancestor-sibling coalition contexts."""
    out: dict[int, list[tuple[frozenset[int], float]]] = {}

    def walk(node: PartitionNode, contexts: list[tuple[frozenset[int], float]]):
        if node.is_leaf:
            out[node.lo] = contexts
            return
        left, right = node.left, node.right
        left_set = frozenset(left.leaves())
        right_set = frozenset(right.leaves())
        walk(
            left,
            [(c, w / 2.0) for c, w in contexts]
            + [(c | right_set, w / 2.0) for c, w in contexts],
        )
        walk(
            right,
            [(c, w / 2.0) for c, w in contexts]
            + [(c | left_set, w / 2.0) for c, w in contexts],
        )

    walk(tree, [(frozenset(), 1.0)])
    return out


def explain_partition_shap(
    model: TextModel,
    x: TokenizedInput,
    target: int,
    *,
    removal: str = DELETE,
    cache: Optional[PredictionCache] = None,
) -> Explanation:
    if x.n_content < 1:
        raise ValueError("need at least one content token")
    cache = cache if cache is not None else PredictionCache()
    mask_id = model.info().mask_token_id
    tree = build_partition_tree(x.n_content)
    contexts = _leaf_contexts(tree)

    needed: dict[frozenset[int], int] = {}
    for leaf, pairs in contexts.items():
        for coalition, _ in pairs:
            needed.setdefault(coalition, len(needed))
            needed.setdefault(coalition | {leaf}, len(needed))

    ordered = sorted(needed, key=needed.get)
    sequences = [
        apply_removal(x, coalition, removal, mask_id) for coalition in ordered
    ]
    before = cache.evaluations
    probabilities = predict(model, sequences, cache)
    value = {
        coalition: float(probabilities[row, target])
        for row, coalition in enumerate(ordered)
    }

    scores = []
    for leaf in range(x.n_content):
        phi = 0.0
        for coalition, weight in contexts[leaf]:
            phi += weight * (value[coalition | {leaf}] - value[coalition])
        scores.append(phi)

    return Explanation(
        method=PARTITION_SHAP,
        target=target,
        token_strings=x.content_token_strings,
        scores=tuple(scores),
        diagnostics={
            "coalitions": len(ordered),
            "model_evaluations": cache.evaluations - before,
        },
    )
