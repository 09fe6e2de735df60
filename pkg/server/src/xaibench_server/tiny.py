"""Build a tiny, fully offline sequence classifier for tests and demos.

A seeded two-layer BERT over a hand-written WordPiece vocabulary,
saved as a normal checkpoint directory so the engine loads it through
the standard local-path route.  The weights are random: useful for
protocol work, meaningless for actual classification.
"""

from __future__ import annotations

from pathlib import Path

import torch
from tokenizers import Tokenizer
from tokenizers.models import WordPiece
from tokenizers.normalizers import BertNormalizer
from tokenizers.pre_tokenizers import BertPreTokenizer
from tokenizers.processors import TemplateProcessing
from transformers import BertConfig, BertForSequenceClassification, PreTrainedTokenizerFast

TINY_VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "great", "movie", "for", "a", "nap", "!", "you", "look",
    "stun", "##ning", "un", "##believ", "##able", "terrible",
    "good", "bad", "hello", "world", "the", "cat", "plot",
]

TINY_LABELS = ("Negative", "Neutral", "Positive")


def build_tiny_classifier(
    out_dir: str | Path,
    *,
    seed: int = 0,
    max_length: int = 64,
    hidden_size: int = 32,
) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    vocab = {token: index for index, token in enumerate(TINY_VOCAB)}
    backend = Tokenizer(WordPiece(vocab, unk_token="[UNK]"))
    backend.normalizer = BertNormalizer(lowercase=True)
    backend.pre_tokenizer = BertPreTokenizer()
    backend.post_processor = TemplateProcessing(
        single="[CLS] $A [SEP]",
        pair="[CLS] $A [SEP] $B [SEP]",
        special_tokens=[("[CLS]", vocab["[CLS]"]), ("[SEP]", vocab["[SEP]"])],
    )
    tokenizer = PreTrainedTokenizerFast(
        tokenizer_object=backend,
        pad_token="[PAD]",
        unk_token="[UNK]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
        model_max_length=max_length,
    )
    tokenizer.save_pretrained(str(out_dir))

    torch.manual_seed(seed)
    config = BertConfig(
        vocab_size=len(TINY_VOCAB),
        hidden_size=hidden_size,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=2 * hidden_size,
        max_position_embeddings=max_length,
        num_labels=len(TINY_LABELS),
        id2label={i: name for i, name in enumerate(TINY_LABELS)},
        label2id={name: i for i, name in enumerate(TINY_LABELS)},
        pad_token_id=vocab["[PAD]"],
    )
    model = BertForSequenceClassification(config)
    model.eval()
    model.save_pretrained(str(out_dir))
    return out_dir
