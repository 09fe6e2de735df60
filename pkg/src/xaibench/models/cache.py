"""Prediction cache keyed by exact token-id sequences."""

from __future__ import annotations

import threading
from typing import Iterable, Optional

import numpy as np

Key = tuple[int, ...]


class PredictionCache:
    """Thread-safe map from token-id sequence to class-probability vector.

    Values for a given key are identical by construction (models are
    deterministic), so concurrent writes are last-write-wins without a
    correctness concern.  ``evaluations`` counts underlying model calls
    (i.e. cache fills), which explainers report as diagnostics.
    """

    def __init__(self) -> None:
        self._data: dict[Key, np.ndarray] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.evaluations = 0

    def __len__(self) -> int:
        return len(self._data)

    def get(self, key: Iterable[int]) -> Optional[np.ndarray]:
        key = tuple(key)
        with self._lock:
            row = self._data.get(key)
            if row is not None:
                self.hits += 1
        return row

    def put(self, key: Iterable[int], probabilities: np.ndarray) -> None:
        row = np.asarray(probabilities, dtype=float)
        total = float(row.sum())
        if abs(total - 1.0) > 1e-6:
            raise ValueError(f"probability row sums to {total!r}, not 1")
        with self._lock:
            self._data[tuple(key)] = row
            self.evaluations += 1
