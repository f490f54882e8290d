"""Record emission in the analysis pipeline's wire format.

The sentence templates below mirror the schema's published surface form
exactly (single-space separated, ASCII punctuation); the analysis side
renders the same strings from the same instance fields, which is checked
in the test suite against its CLI.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .mlm import ExtractionError, MaskedLanguageModel, TokenPrediction
from .phrases import Instance, PhraseInventory


def indefinite_article(noun: str) -> str:
    return "an" if noun[:1].lower() in "aeiou" else "a"


def render_sentences(instance: Instance, mask_token: str) -> tuple[str, str, str]:
    """The three masked sentences for one instance (adjectival modifiers)."""
    first, second = instance.nouns
    lead = (
        f"There is {indefinite_article(first)} {first} "
        f"and {indefinite_article(second)} {second}."
    )
    m1, m2, m3 = instance.adjectives
    return (
        f"{lead} The {mask_token} is {m1} and the same one is {m2}.",
        f"{lead} The {mask_token} is {m2} and the same one is {m3}.",
        f"{lead} The {mask_token} is {m3} and the other one is {m1}.",
    )


@dataclass(frozen=True)
class EmittedRecord:
    line: str | None
    error: str | None


def instance_id(instance: Instance) -> str:
    return f"{instance.nouns[0]}:{instance.nouns[1]}:{'-'.join(instance.adjectives)}"


def build_record(
    instance: Instance,
    predictions: tuple[TokenPrediction, TokenPrediction, TokenPrediction],
    inventory: PhraseInventory,
) -> EmittedRecord:
    """One wire-format line from an instance and its three predictions."""
    raw = [p.candidate_probabilities for p in predictions]
    p_first = []
    for pair in raw:
        total = pair[0] + pair[1]
        if total == 0.0:
            return EmittedRecord(None, f"{instance_id(instance)}: zero probability for both nouns")
        p_first.append(pair[0] / total)

    e_first, e_second = predictions[0].candidate_embeddings
    b_first, b_second = predictions[0].candidate_biases
    diff = e_first - e_second
    norm_first = float(np.linalg.norm(e_first))
    norm_second = float(np.linalg.norm(e_second))
    cosine = None
    if norm_first > 0.0 and norm_second > 0.0:
        cosine = float(e_first @ e_second) / (norm_first * norm_second)

    noun_counts = inventory.noun_counts
    adjective_counts = inventory.adjective_counts
    record = {
        "id": instance_id(instance),
        "nouns": list(instance.nouns),
        "adjectives": list(instance.adjectives),
        "p_first": p_first,
        "raw": [list(pair) for pair in raw],
        "features": {
            "euclidean_dist": float(np.linalg.norm(diff)),
            "bias_diff": b_first - b_second,
            "noun_freqs": [noun_counts[n] for n in instance.nouns],
            "adj_freqs": [adjective_counts[a] for a in instance.adjectives],
            **({"cosine_sim": cosine} if cosine is not None else {}),
        },
    }
    return EmittedRecord(json.dumps(record), None)


def emit_records(
    instances,
    model: MaskedLanguageModel,
    inventory: PhraseInventory,
    out_fh,
    error_fh=None,
) -> tuple[int, int]:
    """Query the model for every instance and stream records to `out_fh`.

    Returns (records written, instances that failed); failures go to
    `error_fh` one reason per line when given.
    """
    written = failed = 0
    for instance in instances:
        try:
            sentences = render_sentences(instance, model.mask_token)
            predictions = tuple(model.predict(s, instance.nouns) for s in sentences)
        except ExtractionError as exc:
            failed += 1
            if error_fh is not None:
                print(f"{instance_id(instance)}: {exc}", file=error_fh)
            continue
        emitted = build_record(instance, predictions, inventory)
        if emitted.error is not None:
            failed += 1
            if error_fh is not None:
                print(emitted.error, file=error_fh)
            continue
        print(emitted.line, file=out_fh)
        written += 1
    return written, failed


def logit_diff_epsilon(prediction: TokenPrediction) -> float:
    """tanh of half the two-candidate logit difference (geometry route)."""
    diff = prediction.prediction_vector @ (
        prediction.candidate_embeddings[0] - prediction.candidate_embeddings[1]
    ) + (prediction.candidate_biases[0] - prediction.candidate_biases[1])
    return math.tanh(diff / 2.0)
