"""Model contract: types, builtin models, remote client, cache, removal."""

from __future__ import annotations

import os

from ..errors import ConfigError
from .base import (
    TextModel,
    default_baseline_ids,
    embedding_gradients,
    predict,
    predict_one,
    tokenize,
)
from .cache import PredictionCache
from .lexicon import (
    DEFAULT_SENTIMENT_WEIGHTS,
    LexiconModel,
    LexiconModelConfig,
    make_builtin_lexicon,
    sigmoid,
)
from .remote import RemoteModel
from .removal import DELETE, MASK, REMOVAL_STRATEGIES, apply_removal
from .types import (
    EMBEDDING_GRADIENTS,
    PREDICT,
    GradientBundle,
    ModelInfo,
    TokenizedInput,
)

MODEL_URL_ENV = "XAI_BENCH_MODEL_URL"


def resolve_model(spec: str | None) -> TextModel:
    """Build a model handle from a ``builtin:<name>`` or ``remote:<url>`` spec.

    A missing spec falls back to the XAI_BENCH_MODEL_URL environment
    variable (treated as a remote URL).
    """
    if spec is None or not spec.strip():
        url = os.environ.get(MODEL_URL_ENV, "").strip()
        if not url:
            raise ConfigError(
                "no model given: pass --model or set " + MODEL_URL_ENV
            )
        return RemoteModel(url)
    spec = spec.strip()
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name != "lexicon":
            raise ConfigError(f"unknown builtin model {name!r}")
        return make_builtin_lexicon()
    if spec.startswith("remote:"):
        return RemoteModel(spec.split(":", 1)[1])
    raise ConfigError(
        f"model spec {spec!r} must look like builtin:<name> or remote:<url>"
    )


__all__ = [
    "DEFAULT_SENTIMENT_WEIGHTS",
    "DELETE",
    "EMBEDDING_GRADIENTS",
    "GradientBundle",
    "LexiconModel",
    "LexiconModelConfig",
    "MASK",
    "MODEL_URL_ENV",
    "ModelInfo",
    "PREDICT",
    "PredictionCache",
    "REMOVAL_STRATEGIES",
    "RemoteModel",
    "TextModel",
    "TokenizedInput",
    "apply_removal",
    "default_baseline_ids",
    "embedding_gradients",
    "make_builtin_lexicon",
    "predict",
    "predict_one",
    "resolve_model",
    "sigmoid",
    "tokenize",
]
