"""Deterministic word-lexicon sentiment classifier.

The positive-class probability is logistic(intercept + sum of the word
weights present in the input).  The same function is realized as an
embedding-bag linear model over one-hot token embeddings, which makes
every gradient analytically exact: with logit z and weight vector W,
d p_pos / d E[t, d] = sigmoid'(z) * W[d] for every token t.  A model
whose weights are all zero therefore has an exactly zero gradient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from ..errors import TruncationError
from .base import TextModel
from .types import EMBEDDING_GRADIENTS, PREDICT, GradientBundle, ModelInfo, TokenizedInput

MASK_TOKEN = "<mask>"
UNK_TOKEN = "<unk>"

# Default table for the ``builtin:lexicon`` model spec.
DEFAULT_SENTIMENT_WEIGHTS: Mapping[str, float] = {
    "great": 2.0,
    "excellent": 1.5,
    "amazing": 1.5,
    "good": 1.0,
    "fun": 0.5,
    "bad": -1.0,
    "boring": -1.0,
    "awful": -1.5,
    "terrible": -2.0,
}


def sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


@dataclass(frozen=True)
class LexiconModelConfig:
    """Word -> weight table plus intercept; unknown words score 0."""

    weights: Mapping[str, float]
    intercept: float = 0.0
    max_length: int = 512
    model_id: str = "builtin:lexicon"
    labels: tuple[str, str] = ("negative", "positive")

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValueError("weight table must not be empty")


class LexiconModel(TextModel):
    """Whitespace tokenizer, no special tokens in tokenized output.

    Token id 0 is the mask token (zero weight), id 1 the unknown-word
    bucket (zero weight); known words get ids in sorted order.  The
    mask id only enters sequences through mask-style removal or
    baseline construction.
    """

    def __init__(self, config: LexiconModelConfig) -> None:
        self.config = config
        words = sorted(config.weights)
        self._vocab: dict[str, int] = {MASK_TOKEN: 0, UNK_TOKEN: 1}
        for word in words:
            self._vocab[word] = len(self._vocab)
        self._weight_by_id = np.zeros(len(self._vocab))
        for word in words:
            self._weight_by_id[self._vocab[word]] = float(config.weights[word])
        self._info = ModelInfo(
            model_id=config.model_id,
            labels=config.labels,
            capabilities=frozenset({PREDICT, EMBEDDING_GRADIENTS}),
            max_length=config.max_length,
            pad_token_id=None,
            mask_token_id=0,
            special_token_ids=frozenset({0}),
        )

    def info(self) -> ModelInfo:
        return self._info

    @property
    def embedding_dim(self) -> int:
        return len(self._vocab)

    # -- tokenization ------------------------------------------------

    def _word_to_id(self, word: str) -> int:
        return self._vocab.get(word.lower(), self._vocab[UNK_TOKEN])

    def tokenize_batch(
        self, inputs, *, truncate: bool = False
    ) -> list[TokenizedInput]:
        out = []
        for pos, item in enumerate(inputs):
            if isinstance(item, str):
                words = item.split()
                word_ids: Optional[tuple[Optional[int], ...]] = None
            else:
                words = [str(w) for w in item if str(w).strip()]
                word_ids = tuple(range(len(words)))
            if len(words) > self.config.max_length:
                if not truncate:
                    raise TruncationError(
                        f"input {pos} has {len(words)} tokens, "
                        f"max_length is {self.config.max_length}"
                    )
                words = words[: self.config.max_length]
                if word_ids is not None:
                    word_ids = word_ids[: self.config.max_length]
            out.append(
                TokenizedInput(
                    token_ids=tuple(self._word_to_id(w) for w in words),
                    token_strings=tuple(words),
                    content_indices=tuple(range(len(words))),
                    word_ids=word_ids,
                )
            )
        return out

    # -- scoring -----------------------------------------------------

    def _logit(self, ids: Sequence[int]) -> float:
        return self.config.intercept + float(
            sum(self._weight_by_id[int(t)] for t in ids)
        )

    def predict_ids(self, batch) -> np.ndarray:
        rows = np.empty((len(batch), 2))
        for i, seq in enumerate(batch):
            p_pos = sigmoid(self._logit(seq))
            rows[i] = (1.0 - p_pos, p_pos)
        return rows

    # -- gradients ---------------------------------------------------

    def embed_ids(self, ids: Sequence[int]) -> np.ndarray:
        """One-hot embedding matrix, shape (len(ids), vocab)."""
        E = np.zeros((len(ids), self.embedding_dim))
        for i, token_id in enumerate(ids):
            E[i, int(token_id)] = 1.0
        return E

    def probability_from_embeddings(self, embeddings: np.ndarray, target: int) -> float:
        """Target-class probability of an arbitrary embedding matrix.

        Also serves as the oracle hook for finite-difference checks.
        """
        z = self.config.intercept + float(np.sum(embeddings @ self._weight_by_id))
        p_pos = sigmoid(z)
        return p_pos if target == 1 else 1.0 - p_pos

    def embedding_gradients(
        self,
        input_ids: Sequence[int],
        baseline_ids: Optional[Sequence[int]],
        target: int,
        alphas: Sequence[float],
    ) -> GradientBundle:
        X = self.embed_ids(input_ids)
        B = (
            np.zeros_like(X)
            if baseline_ids is None
            else self.embed_ids(baseline_ids)
        )
        sign = 1.0 if target == 1 else -1.0
        grads = np.empty((len(alphas), *X.shape))
        for a_idx, alpha in enumerate(alphas):
            E = B + alpha * (X - B)
            z = self.config.intercept + float(np.sum(E @ self._weight_by_id))
            p = sigmoid(z)
            grads[a_idx] = sign * p * (1.0 - p) * self._weight_by_id[None, :]
        return GradientBundle(
            alphas=tuple(float(a) for a in alphas),
            grads=grads,
            input_embeddings=X,
            baseline_embeddings=B,
            target=target,
        )


def make_builtin_lexicon(
    config: Optional[LexiconModelConfig] = None,
) -> LexiconModel:
    """Construct the deterministic builtin model (default sentiment table)."""
    if config is None:
        config = LexiconModelConfig(weights=dict(DEFAULT_SENTIMENT_WEIGHTS))
    return LexiconModel(config)
