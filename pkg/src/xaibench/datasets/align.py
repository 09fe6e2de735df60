"""Project word-level human rationales onto model tokens.

When a tokenizer splits a relevant word into several pieces, every
piece inherits the relevance bit.  Alignment requires word ids, i.e.
the input must have been tokenized from its word sequence.
"""

from __future__ import annotations

import logging

from ..errors import DataError
from ..evaluation import HumanRationale
from ..models import TokenizedInput
from .corpus import RationaleInstance

logger = logging.getLogger(__name__)


def align_rationale(
    instance: RationaleInstance, tokenized: TokenizedInput
) -> HumanRationale:
    """Mask over content tokens; truncated rationale words are recorded."""
    word_ids = tokenized.content_word_ids
    if word_ids is None:
        raise DataError(
            f"instance {instance.id!r}: tokenization carries no word ids; "
            "tokenize the word sequence, not the raw text"
        )
    mask = []
    for ordinal, word_id in enumerate(word_ids):
        if word_id is None or not (0 <= word_id < len(instance.words)):
            raise DataError(
                f"instance {instance.id!r}: content token {ordinal} maps to "
                f"invalid word id {word_id!r}"
            )
        mask.append(int(instance.word_rationale[word_id]))

    covered = set(word_ids)
    dropped = tuple(
        w
        for w, bit in enumerate(instance.word_rationale)
        if bit and w not in covered
    )
    if dropped:
        logger.warning(
            "instance %r: truncation dropped rationale words %s",
            instance.id,
            list(dropped),
        )
    return HumanRationale(mask=tuple(mask), dropped_words=dropped)
