"""Core value types of the model contract."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

PREDICT = "predict"
EMBEDDING_GRADIENTS = "embedding_gradients"


@dataclass(frozen=True)
class ModelInfo:
    """Static description of a scoring model."""

    model_id: str
    labels: tuple[str, ...]
    capabilities: frozenset[str]
    max_length: int
    pad_token_id: Optional[int] = None
    mask_token_id: Optional[int] = None
    special_token_ids: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if len(self.labels) < 2:
            raise ValueError("a classifier needs at least two labels")
        if EMBEDDING_GRADIENTS in self.capabilities:
            if self.pad_token_id is None and self.mask_token_id is None:
                raise ValueError(
                    "gradient-capable models must expose a pad or mask token"
                )

    @property
    def num_labels(self) -> int:
        return len(self.labels)

    def supports(self, capability: str) -> bool:
        return capability in self.capabilities


@dataclass(frozen=True)
class TokenizedInput:
    """One tokenized text.

    ``content_indices`` are the positions of non-special tokens inside
    ``token_ids``; attribution scores, rationales and removal sets are
    all indexed by *content ordinal* (0 .. n_content-1), never by raw
    position.  ``word_ids`` maps each token to its source word when the
    input was tokenized from a word sequence (None at special tokens,
    absent for raw-text tokenization).
    """

    token_ids: tuple[int, ...]
    token_strings: tuple[str, ...]
    content_indices: tuple[int, ...]
    word_ids: Optional[tuple[Optional[int], ...]] = None

    def __post_init__(self) -> None:
        if len(self.token_ids) != len(self.token_strings):
            raise ValueError("token_ids and token_strings length mismatch")
        if any(
            a >= b for a, b in zip(self.content_indices, self.content_indices[1:])
        ):
            raise ValueError("content_indices must be strictly increasing")
        if self.content_indices and not (
            0 <= self.content_indices[0] and self.content_indices[-1] < len(self.token_ids)
        ):
            raise ValueError("content_indices out of range")
        if self.word_ids is not None:
            if len(self.word_ids) != len(self.token_ids):
                raise ValueError("word_ids must align with token_ids")
            content_words = [
                self.word_ids[i] for i in self.content_indices
                if self.word_ids[i] is not None
            ]
            if any(a > b for a, b in zip(content_words, content_words[1:])):
                raise ValueError("word_ids must be non-decreasing over content tokens")

    @property
    def n_content(self) -> int:
        return len(self.content_indices)

    @property
    def content_token_ids(self) -> tuple[int, ...]:
        return tuple(self.token_ids[i] for i in self.content_indices)

    @property
    def content_token_strings(self) -> tuple[str, ...]:
        return tuple(self.token_strings[i] for i in self.content_indices)

    @property
    def content_word_ids(self) -> Optional[tuple[int, ...]]:
        """Source-word index per content token, or None for raw text."""
        if self.word_ids is None:
            return None
        return tuple(self.word_ids[i] for i in self.content_indices)  # type: ignore[misc]


@dataclass(frozen=True)
class GradientBundle:
    """Gradients of a class probability along an embedding-space path.

    ``grads[a][t][d]`` is the gradient at interpolation point alphas[a]
    of the target-class probability with respect to embedding dimension
    d of token t, evaluated at B + alpha * (X - B).
    """

    alphas: tuple[float, ...]
    grads: np.ndarray  # (n_alphas, n_tokens, dim)
    input_embeddings: np.ndarray  # (n_tokens, dim)
    baseline_embeddings: np.ndarray  # (n_tokens, dim)
    target: int

    def __post_init__(self) -> None:
        n_alphas, n_tokens, dim = self.grads.shape
        if n_alphas != len(self.alphas):
            raise ValueError("one gradient slice per alpha required")
        if self.input_embeddings.shape != (n_tokens, dim):
            raise ValueError("input_embeddings shape mismatch")
        if self.baseline_embeddings.shape != (n_tokens, dim):
            raise ValueError("baseline_embeddings shape mismatch")
