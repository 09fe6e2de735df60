"""Uniform scoring contract plus the cache-aware prediction entry point.

Every model (builtin or remote) implements :class:`TextModel`; the
module-level functions are the operations everything else in the
package calls.  Probability rows always cover *all* classes so a single
evaluation serves any target.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Optional, Sequence, Union

import numpy as np

from ..errors import InvalidInputError, UnsupportedCapabilityError
from .cache import PredictionCache
from .types import EMBEDDING_GRADIENTS, GradientBundle, ModelInfo, TokenizedInput

RawInputs = Union[Sequence[str], Sequence[Sequence[str]]]

PROBABILITY_ATOL = 1e-6


class TextModel(ABC):
    """A text classifier reachable through tokenize / predict / gradients."""

    @abstractmethod
    def info(self) -> ModelInfo: ...

    @abstractmethod
    def tokenize_batch(
        self, inputs: RawInputs, *, truncate: bool = False
    ) -> list[TokenizedInput]:
        """Tokenize raw texts or pre-split word sequences.

        Word-sequence inputs must yield ``word_ids``; raw texts must
        not.  Implementations raise TruncationError when an input
        overflows ``max_length`` and ``truncate`` is False.
        """

    @abstractmethod
    def predict_ids(self, batch: Sequence[Sequence[int]]) -> np.ndarray:
        """Class probabilities for raw token-id sequences, shape (B, C)."""

    def embedding_gradients(
        self,
        input_ids: Sequence[int],
        baseline_ids: Optional[Sequence[int]],
        target: int,
        alphas: Sequence[float],
    ) -> GradientBundle:
        raise UnsupportedCapabilityError(
            f"model {self.info().model_id!r} does not expose embedding gradients"
        )



def _check_inputs_non_empty(inputs: RawInputs) -> None:
    if len(inputs) == 0:
        raise InvalidInputError("no inputs given")
    for pos, item in enumerate(inputs):
        if isinstance(item, str):
            empty = not item.strip()
        else:
            empty = not any(str(w).strip() for w in item)
        if empty:
            raise InvalidInputError(f"input {pos} is empty after trimming")


def tokenize(
    model: TextModel, inputs: RawInputs, *, truncate: bool = False
) -> list[TokenizedInput]:
    """Tokenize a batch of raw texts or word sequences."""
    _check_inputs_non_empty(inputs)
    return model.tokenize_batch(inputs, truncate=truncate)


def predict(
    model: TextModel,
    batch: Sequence[Sequence[int]],
    cache: Optional[PredictionCache] = None,
) -> np.ndarray:
    """Cache-aware batched prediction.

    The cache is consulted before any model call and updated after;
    duplicate sequences inside one batch trigger a single evaluation.
    """
    if len(batch) == 0:
        raise InvalidInputError("empty prediction batch")
    max_length = model.info().max_length
    keys = []
    for seq in batch:
        key = tuple(int(t) for t in seq)
        if len(key) > max_length:
            raise InvalidInputError(
                f"sequence of length {len(key)} exceeds max_length {max_length}"
            )
        keys.append(key)

    resolved: dict[tuple[int, ...], np.ndarray] = {}
    missing: list[tuple[int, ...]] = []
    missing_seen: set[tuple[int, ...]] = set()
    for key in keys:
        if key in resolved or key in missing_seen:
            continue
        row = cache.get(key) if cache is not None else None
        if row is None:
            missing.append(key)
            missing_seen.add(key)
        else:
            resolved[key] = row

    if missing:
        rows = np.asarray(model.predict_ids(missing), dtype=float)
        if rows.shape != (len(missing), model.info().num_labels):
            raise InvalidInputError(
                f"model returned shape {rows.shape} for batch of {len(missing)}"
            )
        for key, row in zip(missing, rows):
            total = float(row.sum())
            if abs(total - 1.0) > PROBABILITY_ATOL:
                raise InvalidInputError(f"probability row sums to {total!r}, not 1")
            if cache is not None:
                cache.put(key, row)
            resolved[key] = row

    return np.stack([resolved[key] for key in keys])


def predict_one(
    model: TextModel,
    ids: Sequence[int],
    target: int,
    cache: Optional[PredictionCache] = None,
) -> float:
    """Target-class probability of a single sequence."""
    return float(predict(model, [ids], cache)[0, target])


def embedding_gradients(
    model: TextModel,
    input_ids: Sequence[int],
    baseline_ids: Optional[Sequence[int]],
    target: int,
    alphas: Sequence[float],
) -> GradientBundle:
    """Gradients of the target-class probability at B + alpha * (X - B)."""
    info = model.info()
    if not info.supports(EMBEDDING_GRADIENTS):
        raise UnsupportedCapabilityError(
            f"model {info.model_id!r} does not expose embedding gradients"
        )
    if baseline_ids is not None and len(baseline_ids) != len(input_ids):
        raise InvalidInputError("baseline must have the same length as the input")
    if not alphas or any(not (0.0 < a <= 1.0) for a in alphas):
        raise InvalidInputError("alphas must lie in (0, 1]")
    if not (0 <= target < info.num_labels):
        raise InvalidInputError(f"target {target} out of range")
    bundle = model.embedding_gradients(input_ids, baseline_ids, target, alphas)
    for idx in range(len(bundle.alphas)):
        if not np.all(np.isfinite(bundle.grads[idx])):
            from ..errors import NumericError

            raise NumericError(f"non-finite gradient at alpha index {idx}")
    return bundle


def default_baseline_ids(
    x: TokenizedInput, info: ModelInfo
) -> Optional[tuple[int, ...]]:
    """Same-length baseline: content positions set to mask, else pad.

    Returns None when the model has neither token, which gradient
    implementations interpret as an all-zero embedding baseline.
    """
    fill = info.mask_token_id if info.mask_token_id is not None else info.pad_token_id
    if fill is None:
        return None
    ids = list(x.token_ids)
    for pos in x.content_indices:
        ids[pos] = fill
    return tuple(ids)
