"""Line-delimited record interchange format.

One JSON object per line with keys `id`, `nouns` (2), `adjectives` (3),
`p_first` (3 values in [0, 1], the normalised first-noun probability per
context), optional `raw` (3 unnormalised probability pairs) and optional
`features` (`euclidean_dist`, `bias_diff`, `noun_freqs`, `adj_freqs`,
optional `cosine_sim`).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import ModelValidationError
from .schema import normalize_pair
from .stats import FeatureVector, entropy_bits

RAW_CONSISTENCY_TOL = 1e-9


@dataclass(frozen=True)
class RecordFeatures:
    """Wire-level feature payload attached to a record."""

    euclidean_dist: float
    bias_diff: float
    noun_freqs: tuple[float, float]
    adj_freqs: tuple[float, float, float]
    cosine_sim: float | None = None

    def feature_vector(self) -> FeatureVector:
        return FeatureVector(
            euclidean_dist=self.euclidean_dist,
            bias_diff=self.bias_diff,
            nouns_entropy=entropy_bits(self.noun_freqs),
            adjectives_entropy=entropy_bits(self.adj_freqs),
            cosine_similarity=self.cosine_sim,
        )


@dataclass(frozen=True)
class ProbabilityRecord:
    """One schema instance with its per-context masked-referent probabilities."""

    id: str
    nouns: tuple[str, str]
    adjectives: tuple[str, str, str]
    p_first: tuple[float, float, float]
    raw: tuple[tuple[float, float], ...] | None = None
    features: RecordFeatures | None = None


class RecordParseError(ModelValidationError):
    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def _parse_one(obj: dict) -> ProbabilityRecord:
    for key in ("id", "nouns", "adjectives", "p_first"):
        if key not in obj:
            raise ModelValidationError(f"missing key {key!r}")
    nouns = obj["nouns"]
    adjectives = obj["adjectives"]
    p_first = obj["p_first"]
    if not (isinstance(nouns, list) and len(nouns) == 2):
        raise ModelValidationError("nouns must be an array of 2 strings")
    if not (isinstance(adjectives, list) and len(adjectives) == 3):
        raise ModelValidationError("adjectives must be an array of 3 strings")
    if not (isinstance(p_first, list) and len(p_first) == 3):
        raise ModelValidationError("p_first must be an array of 3 numbers")
    for p in p_first:
        if not isinstance(p, (int, float)) or isinstance(p, bool) or not math.isfinite(p):
            raise ModelValidationError(f"p_first entry {p!r} is not a finite number")
        if not 0.0 <= p <= 1.0:
            raise ModelValidationError(f"p_first entry {p} outside [0, 1]")

    raw = None
    if obj.get("raw") is not None:
        pairs = obj["raw"]
        if not (isinstance(pairs, list) and len(pairs) == 3 and all(len(pair) == 2 for pair in pairs)):
            raise ModelValidationError("raw must be an array of 3 probability pairs")
        raw = tuple((float(a), float(b)) for a, b in pairs)
        for (a, b), p in zip(raw, p_first):
            normalised = normalize_pair(a, b)[0]
            if abs(normalised - p) > RAW_CONSISTENCY_TOL:
                raise ModelValidationError(
                    f"raw pair ({a}, {b}) normalises to {normalised}, p_first says {p}"
                )

    features = None
    if obj.get("features") is not None:
        f = obj["features"]
        for key in ("euclidean_dist", "bias_diff", "noun_freqs", "adj_freqs"):
            if key not in f:
                raise ModelValidationError(f"features object missing key {key!r}")
        if len(f["noun_freqs"]) != 2 or len(f["adj_freqs"]) != 3:
            raise ModelValidationError("noun_freqs needs 2 entries and adj_freqs needs 3")
        features = RecordFeatures(
            euclidean_dist=float(f["euclidean_dist"]),
            bias_diff=float(f["bias_diff"]),
            noun_freqs=tuple(float(v) for v in f["noun_freqs"]),
            adj_freqs=tuple(float(v) for v in f["adj_freqs"]),
            cosine_sim=None if f.get("cosine_sim") is None else float(f["cosine_sim"]),
        )

    return ProbabilityRecord(
        id=str(obj["id"]),
        nouns=tuple(str(n) for n in nouns),
        adjectives=tuple(str(a) for a in adjectives),
        p_first=tuple(float(p) for p in p_first),
        raw=raw,
        features=features,
    )


def parse_records(stream, strict: bool = False) -> tuple[list[ProbabilityRecord], list[RecordParseError]]:
    """Parse line-delimited records.

    Returns the valid records in input order plus the per-line errors; with
    `strict` the first error is raised instead of collected.
    """
    records = []
    errors = []
    for line_number, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            if not isinstance(obj, dict):
                raise ModelValidationError("record must be a JSON object")
            records.append(_parse_one(obj))
        except (json.JSONDecodeError, ModelValidationError, TypeError, ValueError) as exc:
            err = RecordParseError(line_number, str(exc))
            if strict:
                raise err from exc
            errors.append(err)
    return records, errors


def serialize_record(record: ProbabilityRecord) -> str:
    """One JSON line; floats keep their shortest round-trip form."""
    obj = {
        "id": record.id,
        "nouns": list(record.nouns),
        "adjectives": list(record.adjectives),
        "p_first": list(record.p_first),
    }
    if record.raw is not None:
        obj["raw"] = [list(pair) for pair in record.raw]
    if record.features is not None:
        f = record.features
        features = {
            "euclidean_dist": f.euclidean_dist,
            "bias_diff": f.bias_diff,
            "noun_freqs": list(f.noun_freqs),
            "adj_freqs": list(f.adj_freqs),
        }
        if f.cosine_sim is not None:
            features["cosine_sim"] = f.cosine_sim
        obj["features"] = features
    return json.dumps(obj)
