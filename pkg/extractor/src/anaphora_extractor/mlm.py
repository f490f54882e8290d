"""Masked-language-model adapter.

Wraps a BERT-style masked-LM checkpoint and exposes, for one masked
sentence and a two-noun candidate pair: the full-vocabulary softmax
probabilities restricted to the candidates, their raw logits, the
prediction vector feeding the decoder at the masked position, and the
candidates' decoder embedding rows and biases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

DEFAULT_MODEL = "bert-base-uncased"


class ExtractionError(Exception):
    pass


@dataclass(frozen=True)
class TokenPrediction:
    """Model outputs for one masked sentence and one candidate pair."""

    candidate_probabilities: tuple[float, float]
    candidate_logits: tuple[float, float]
    prediction_vector: np.ndarray
    candidate_embeddings: tuple[np.ndarray, np.ndarray]
    candidate_biases: tuple[float, float]


class MaskedLanguageModel:
    """A BERT-family checkpoint in evaluation mode.

    The prediction head must expose the usual transform/decoder split so
    the prediction vector (the decoder input) can be read off directly.
    """

    def __init__(self, name_or_path: str = DEFAULT_MODEL):
        from transformers import AutoTokenizer, BertForMaskedLM

        self.tokenizer = AutoTokenizer.from_pretrained(name_or_path)
        self.model = BertForMaskedLM.from_pretrained(name_or_path)
        self.model.eval()
        self.mask_token = self.tokenizer.mask_token

    def single_token_id(self, word: str) -> int | None:
        """Vocabulary id when `word` is a single non-UNK token, else None."""
        ids = self.tokenizer.encode(word, add_special_tokens=False)
        if len(ids) != 1 or ids[0] == self.tokenizer.unk_token_id:
            return None
        return ids[0]

    def vocabulary_words(self) -> set[str]:
        """All plain word tokens (no subword continuations, no specials)."""
        special = set(self.tokenizer.all_special_tokens)
        return {
            token
            for token in self.tokenizer.get_vocab()
            if token not in special and not token.startswith("##") and token.isalpha()
        }

    @torch.no_grad()
    def predict(self, sentence: str, candidates: tuple[str, str]) -> TokenPrediction:
        ids = []
        for word in candidates:
            token_id = self.single_token_id(word)
            if token_id is None:
                raise ExtractionError(f"candidate {word!r} is not a single vocabulary token")
            ids.append(token_id)

        encoded = self.tokenizer(sentence, return_tensors="pt")
        mask_positions = (encoded["input_ids"][0] == self.tokenizer.mask_token_id).nonzero()
        if mask_positions.shape[0] != 1:
            raise ExtractionError(
                f"sentence must contain exactly one {self.mask_token}, found {mask_positions.shape[0]}"
            )
        position = int(mask_positions[0, 0])

        hidden = self.model.bert(**encoded).last_hidden_state[0, position]
        prediction_vector = self.model.cls.predictions.transform(hidden)
        logits = self.model.cls.predictions.decoder(prediction_vector)
        probabilities = torch.softmax(logits, dim=-1)

        decoder = self.model.cls.predictions.decoder
        return TokenPrediction(
            candidate_probabilities=(float(probabilities[ids[0]]), float(probabilities[ids[1]])),
            candidate_logits=(float(logits[ids[0]]), float(logits[ids[1]])),
            prediction_vector=prediction_vector.numpy().astype(np.float64),
            candidate_embeddings=(
                decoder.weight[ids[0]].numpy().astype(np.float64),
                decoder.weight[ids[1]].numpy().astype(np.float64),
            ),
            candidate_biases=(float(decoder.bias[ids[0]]), float(decoder.bias[ids[1]])),
        )

    @torch.no_grad()
    def full_logits(self, sentence: str) -> tuple[int, np.ndarray]:
        """Mask position and the model's own logits there (cross-check path)."""
        encoded = self.tokenizer(sentence, return_tensors="pt")
        mask_positions = (encoded["input_ids"][0] == self.tokenizer.mask_token_id).nonzero()
        if mask_positions.shape[0] != 1:
            raise ExtractionError("sentence must contain exactly one mask token")
        position = int(mask_positions[0, 0])
        logits = self.model(**encoded).logits[0, position]
        return position, logits.numpy().astype(np.float64)
