"""Model engine: one transformer sequence classifier behind a lock.

Loads a Hugging Face checkpoint (hub name or local path), exposes
tokenization, batched softmax prediction, and gradients of the
target-class *probability* with respect to input embeddings along the
straight path B + alpha * (X - B).  Inference always runs in eval mode
(dropout disabled); forward passes are serialized so concurrent
requests cannot interleave on the device.
"""

from __future__ import annotations

import threading
from typing import Optional, Sequence

import torch
from transformers import AutoModelForSequenceClassification, AutoTokenizer

_LENGTH_SENTINEL = 10**6  # tokenizers report huge model_max_length when unset


class EngineError(ValueError):
    """Client-caused problem (bad ids, bad target); maps to HTTP 400."""


class ModelEngine:
    def __init__(self, model_path: str, device: str = "cpu") -> None:
        self.model_path = model_path
        self.device = torch.device(device)
        self.tokenizer = AutoTokenizer.from_pretrained(model_path)
        if not self.tokenizer.is_fast:
            raise RuntimeError(
                "a fast tokenizer is required for word-id tracking"
            )
        self.model = AutoModelForSequenceClassification.from_pretrained(model_path)
        self.model.to(self.device)
        self.model.eval()
        self._lock = threading.Lock()

    # -- metadata -----------------------------------------------------

    @property
    def labels(self) -> list[str]:
        id2label = self.model.config.id2label
        return [str(id2label[i]) for i in range(len(id2label))]

    @property
    def max_length(self) -> int:
        declared = int(self.tokenizer.model_max_length)
        positions = int(
            getattr(self.model.config, "max_position_embeddings", _LENGTH_SENTINEL)
        )
        limit = min(declared, positions)
        return limit if limit < _LENGTH_SENTINEL else 512

    def info(self) -> dict:
        return {
            "model_id": self.model_path,
            "labels": self.labels,
            "capabilities": ["predict", "embedding_gradients"],
            "pad_token_id": self.tokenizer.pad_token_id,
            "mask_token_id": self.tokenizer.mask_token_id,
            "special_token_ids": sorted(set(self.tokenizer.all_special_ids)),
            "max_length": self.max_length,
        }

    # -- tokenize -----------------------------------------------------

    def tokenize(
        self,
        texts: Optional[Sequence[str]] = None,
        words: Optional[Sequence[Sequence[str]]] = None,
    ) -> list[dict]:
        if (texts is None) == (words is None):
            raise EngineError("provide exactly one of 'texts' or 'words'")
        for pos, item in enumerate(texts if texts is not None else words):
            if isinstance(item, str):
                empty = not item.strip()
            else:
                empty = not any(str(w).strip() for w in item)
            if empty:
                raise EngineError(f"input {pos} is empty")
        if texts is not None:
            items = list(texts)
            encoding = self.tokenizer(
                items,
                truncation=True,
                max_length=self.max_length,
                return_special_tokens_mask=True,
            )
        else:
            items = [list(map(str, seq)) for seq in words]
            encoding = self.tokenizer(
                items,
                is_split_into_words=True,
                truncation=True,
                max_length=self.max_length,
                return_special_tokens_mask=True,
            )
        records = []
        for i in range(len(items)):
            ids = list(encoding["input_ids"][i])
            special = encoding["special_tokens_mask"][i]
            records.append(
                {
                    "token_ids": ids,
                    "tokens": self.tokenizer.convert_ids_to_tokens(ids),
                    "content_indices": [
                        pos for pos, flag in enumerate(special) if flag == 0
                    ],
                    "word_ids": encoding.word_ids(i) if words is not None else None,
                }
            )
        return records

    # -- predict ------------------------------------------------------

    def predict(self, batch: Sequence[Sequence[int]]) -> list[list[float]]:
        if not batch:
            raise EngineError("empty batch")
        vocab_size = int(self.model.config.vocab_size)
        for row, seq in enumerate(batch):
            if len(seq) == 0:
                raise EngineError(f"sequence {row} is empty")
            if len(seq) > self.max_length:
                raise EngineError(
                    f"sequence {row} of length {len(seq)} exceeds max_length "
                    f"{self.max_length}"
                )
            if any(not 0 <= int(t) < vocab_size for t in seq):
                raise EngineError(f"sequence {row} contains out-of-vocab ids")
        pad = self.tokenizer.pad_token_id or 0
        width = max(len(seq) for seq in batch)
        input_ids = torch.full((len(batch), width), pad, dtype=torch.long)
        attention = torch.zeros((len(batch), width), dtype=torch.long)
        for row, seq in enumerate(batch):
            input_ids[row, : len(seq)] = torch.tensor(list(seq), dtype=torch.long)
            attention[row, : len(seq)] = 1
        with self._lock, torch.no_grad():
            logits = self.model(
                input_ids=input_ids.to(self.device),
                attention_mask=attention.to(self.device),
            ).logits
        return logits.softmax(dim=-1).cpu().double().tolist()

    # -- gradients ----------------------------------------------------

    def _target_probability(self, embeddings: torch.Tensor, target: int) -> torch.Tensor:
        attention = torch.ones(
            1, embeddings.shape[0], dtype=torch.long, device=self.device
        )
        logits = self.model(
            inputs_embeds=embeddings.unsqueeze(0), attention_mask=attention
        ).logits
        return logits.softmax(dim=-1)[0, target]

    def probability_at(self, embeddings: torch.Tensor, target: int) -> float:
        """Forward-only probe used by finite-difference checks."""
        with self._lock, torch.no_grad():
            return float(self._target_probability(embeddings.to(self.device), target))

    def gradients(
        self,
        input_ids: Sequence[int],
        baseline_ids: Sequence[int],
        target: int,
        alphas: Sequence[float],
    ) -> dict:
        if len(baseline_ids) != len(input_ids):
            raise EngineError("baseline_ids must match input_ids in length")
        if not 0 <= target < len(self.labels):
            raise EngineError(f"target {target} out of range")
        if not alphas or any(not 0.0 < a <= 1.0 for a in alphas):
            raise EngineError("alphas must lie in (0, 1]")
        if len(input_ids) == 0 or len(input_ids) > self.max_length:
            raise EngineError("input length out of range")
        with self._lock:
            embed = self.model.get_input_embeddings()
            ids = torch.tensor(list(input_ids), dtype=torch.long, device=self.device)
            base = torch.tensor(list(baseline_ids), dtype=torch.long, device=self.device)
            X = embed(ids).detach()
            B = embed(base).detach()
            grads = []
            for alpha in alphas:
                point = (B + float(alpha) * (X - B)).clone().requires_grad_(True)
                probability = self._target_probability(point, target)
                (grad,) = torch.autograd.grad(probability, point)
                grads.append(grad.cpu().double().tolist())
        return {
            "grads": grads,
            "input_embeddings": X.cpu().double().tolist(),
            "baseline_embeddings": B.cpu().double().tolist(),
        }
