"""Client side of the JSON-over-HTTP scoring protocol.

Endpoints:
  GET  /info       -> model metadata
  POST /tokenize   {"texts": [...]} or {"words": [[...]]}
  POST /predict    {"batch": [[int]]} -> {"probabilities": [[float]]}
  POST /gradients  {"input_ids": ..., "baseline_ids": ..., "target": ...,
                    "alphas": ...} -> grads + path endpoints

Requests are retried on transport failures and 5xx responses with
exponential backoff; scoring is pure, so retries are idempotent.
Prediction batches are capped at the server-advertised limit (the
optional ``max_batch`` field of /info, defaulting to 32).
"""

from __future__ import annotations

import time
from typing import Any, Optional, Sequence

import httpx
import numpy as np

from ..errors import ConfigError, ProtocolError, TransportError, TruncationError
from .base import TextModel
from .types import GradientBundle, ModelInfo, TokenizedInput

DEFAULT_MAX_BATCH = 32
DEFAULT_RETRIES = 3
DEFAULT_BACKOFF_S = 0.2


class RemoteModel(TextModel):
    def __init__(
        self,
        base_url: str,
        *,
        client: Optional[httpx.Client] = None,
        retries: int = DEFAULT_RETRIES,
        backoff_s: float = DEFAULT_BACKOFF_S,
        timeout_s: float = 60.0,
    ) -> None:
        self.base_url = base_url.rstrip("/")
        self._client = client or httpx.Client(timeout=timeout_s)
        self._retries = max(1, retries)
        self._backoff_s = backoff_s
        self._info: Optional[ModelInfo] = None
        self._max_batch = DEFAULT_MAX_BATCH

    # -- transport ------------------------------------------------------

    def _request(self, method: str, path: str, payload: Optional[dict] = None) -> Any:
        url = self.base_url + path
        last_error: Optional[Exception] = None
        for attempt in range(self._retries):
            if attempt:
                time.sleep(self._backoff_s * 2 ** (attempt - 1))
            try:
                response = self._client.request(method, url, json=payload)
            except httpx.HTTPError as exc:
                last_error = exc
                continue
            if response.status_code >= 500:
                last_error = TransportError(
                    f"{method} {path} -> {response.status_code}: {response.text[:200]}"
                )
                continue
            if response.status_code >= 400:
                raise ProtocolError(
                    f"{method} {path} -> {response.status_code}: {response.text[:200]}"
                )
            try:
                return response.json()
            except ValueError as exc:
                raise ProtocolError(f"{method} {path}: response is not JSON") from exc
        raise TransportError(
            f"{method} {url} failed after {self._retries} attempts: {last_error}"
        )

    # -- contract ---------------------------------------------------------

    def info(self) -> ModelInfo:
        if self._info is None:
            data = self._request("GET", "/info")
            try:
                self._info = ModelInfo(
                    model_id=str(data["model_id"]),
                    labels=tuple(str(x) for x in data["labels"]),
                    capabilities=frozenset(str(c) for c in data["capabilities"]),
                    max_length=int(data["max_length"]),
                    pad_token_id=_opt_int(data.get("pad_token_id")),
                    mask_token_id=_opt_int(data.get("mask_token_id")),
                    special_token_ids=frozenset(
                        int(t) for t in data.get("special_token_ids", ())
                    ),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ProtocolError(f"malformed /info payload: {exc}") from exc
            advertised = data.get("max_batch")
            if advertised is not None:
                self._max_batch = int(advertised)
        return self._info

    def tokenize_batch(self, inputs, *, truncate: bool = False) -> list[TokenizedInput]:
        texts_mode = all(isinstance(item, str) for item in inputs)
        if texts_mode:
            payload = {"texts": list(inputs)}
        else:
            payload = {"words": [[str(w) for w in item] for item in inputs]}
        data = self._request("POST", "/tokenize", payload)
        if not isinstance(data, list) or len(data) != len(inputs):
            raise ProtocolError("tokenize response must list one record per input")
        out = []
        for pos, record in enumerate(data):
            try:
                word_ids_raw = record.get("word_ids")
                tokenized = TokenizedInput(
                    token_ids=tuple(int(t) for t in record["token_ids"]),
                    token_strings=tuple(str(s) for s in record["tokens"]),
                    content_indices=tuple(int(i) for i in record["content_indices"]),
                    word_ids=None
                    if word_ids_raw is None
                    else tuple(
                        None if w is None else int(w) for w in word_ids_raw
                    ),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ProtocolError(f"malformed tokenize record {pos}: {exc}") from exc
            if not truncate and _was_truncated(tokenized, inputs[pos], self.info()):
                raise TruncationError(
                    f"input {pos} overflows the server max_length "
                    f"({self.info().max_length}); pass truncate=True to accept"
                )
            out.append(tokenized)
        return out

    def predict_ids(self, batch: Sequence[Sequence[int]]) -> np.ndarray:
        self.info()  # ensures the advertised batch limit is known
        rows: list[list[float]] = []
        for start in range(0, len(batch), self._max_batch):
            part = [list(map(int, seq)) for seq in batch[start : start + self._max_batch]]
            data = self._request("POST", "/predict", {"batch": part})
            try:
                probabilities = data["probabilities"]
            except (KeyError, TypeError) as exc:
                raise ProtocolError("predict response lacks 'probabilities'") from exc
            if len(probabilities) != len(part):
                raise ProtocolError(
                    f"server returned {len(probabilities)} rows for {len(part)} inputs"
                )
            rows.extend(probabilities)
        result = np.asarray(rows, dtype=float)
        if result.ndim != 2 or result.shape[1] != self.info().num_labels:
            raise ProtocolError(
                f"probability matrix has shape {result.shape}, expected "
                f"(*, {self.info().num_labels})"
            )
        return result

    def embedding_gradients(
        self,
        input_ids: Sequence[int],
        baseline_ids: Optional[Sequence[int]],
        target: int,
        alphas: Sequence[float],
    ) -> GradientBundle:
        if baseline_ids is None:
            raise ConfigError(
                "remote models need explicit baseline ids (mask or pad frame)"
            )
        data = self._request(
            "POST",
            "/gradients",
            {
                "input_ids": [int(t) for t in input_ids],
                "baseline_ids": [int(t) for t in baseline_ids],
                "target": int(target),
                "alphas": [float(a) for a in alphas],
            },
        )
        try:
            grads = np.asarray(data["grads"], dtype=float)
            input_embeddings = np.asarray(data["input_embeddings"], dtype=float)
            baseline_embeddings = np.asarray(data["baseline_embeddings"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError(f"malformed gradients payload: {exc}") from exc
        expected = (len(alphas), len(input_ids))
        if grads.ndim != 3 or grads.shape[:2] != expected:
            raise ProtocolError(
                f"gradient tensor has shape {grads.shape}, expected {expected} x dim"
            )
        return GradientBundle(
            alphas=tuple(float(a) for a in alphas),
            grads=grads,
            input_embeddings=input_embeddings,
            baseline_embeddings=baseline_embeddings,
            target=int(target),
        )


def _opt_int(value: Any) -> Optional[int]:
    return None if value is None else int(value)


def _was_truncated(tokenized: TokenizedInput, original, info: ModelInfo) -> bool:
    if tokenized.word_ids is not None and not isinstance(original, str):
        covered = {w for w in tokenized.word_ids if w is not None}
        return bool(covered) and max(covered) < len(list(original)) - 1
    # Raw text: the exact word coverage is unknown; a full-length output
    # is the only reliable overflow signal.
    return len(tokenized.token_ids) >= info.max_length
