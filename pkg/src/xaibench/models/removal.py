"""Build perturbed token sequences by dropping content tokens."""

from __future__ import annotations

from typing import Iterable, Optional

from ..errors import ConfigError
from .types import TokenizedInput

DELETE = "delete"
MASK = "mask"
REMOVAL_STRATEGIES = (DELETE, MASK)


def apply_removal(
    tokenized: TokenizedInput,
    keep: Iterable[int],
    strategy: str = DELETE,
    mask_token_id: Optional[int] = None,
) -> tuple[int, ...]:
    """Token-id sequence with only the ``keep`` content tokens retained.

    ``keep`` holds content ordinals (0 .. n_content-1).  ``delete``
    shortens the sequence; ``mask`` substitutes the dropped positions
    with ``mask_token_id``.  The special-token frame survives either
    way, and the order of surviving tokens is preserved.
    """
    keep_set = set(keep)
    if not keep_set.issubset(range(tokenized.n_content)):
        bad = sorted(keep_set - set(range(tokenized.n_content)))
        raise ValueError(f"keep indices {bad} outside content range")
    if strategy not in REMOVAL_STRATEGIES:
        raise ConfigError(f"unknown removal strategy {strategy!r}")
    if strategy == MASK and mask_token_id is None:
        raise ConfigError("mask removal requires a model with a mask token")

    dropped_positions = {
        tokenized.content_indices[ordinal]
        for ordinal in range(tokenized.n_content)
        if ordinal not in keep_set
    }
    out: list[int] = []
    for pos, token_id in enumerate(tokenized.token_ids):
        if pos in dropped_positions:
            if strategy == MASK:
                out.append(int(mask_token_id))  # type: ignore[arg-type]
            continue
        out.append(int(token_id))
    return tuple(out)
