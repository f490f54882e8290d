"""Logit geometry of a two-candidate masked prediction.

With candidate embeddings differing by dx and decoder biases by db, the
two-candidate log-odds is dl = p.dx + db for prediction vector p, and the
imbalance parameter of the induced context table is eps = tanh(dl / 2).
The locus dl = 0 is a hyperplane; dl / ||dx|| is the signed distance to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ModelValidationError, SaturationError


@dataclass(frozen=True)
class PredictionGeometry:
    """A prediction vector against a fixed candidate pair's (dx, db)."""

    prediction: np.ndarray
    embedding_diff: np.ndarray
    bias_diff: float

    def __post_init__(self):
        object.__setattr__(self, "prediction", np.asarray(self.prediction, dtype=float))
        object.__setattr__(self, "embedding_diff", np.asarray(self.embedding_diff, dtype=float))
        if self.prediction.ndim != 1 or self.embedding_diff.ndim != 1:
            raise ModelValidationError("prediction and embedding_diff must be vectors")
        if self.prediction.shape != self.embedding_diff.shape:
            raise ModelValidationError(
                f"dimension mismatch: {self.prediction.shape} vs {self.embedding_diff.shape}"
            )
        if self.prediction.shape[0] < 1:
            raise ModelValidationError("vectors must have dimension >= 1")


def logit_diff(g: PredictionGeometry) -> float:
    """Two-candidate log-odds: p.dx + db."""
    return float(g.prediction @ g.embedding_diff + g.bias_diff)


def epsilon_from_logit_diff(dl: float) -> float:
    """eps = tanh(dl / 2), strictly inside (-1, 1) for finite dl."""
    if not math.isfinite(dl):
        raise ModelValidationError(f"logit difference must be finite, got {dl}")
    return math.tanh(dl / 2.0)


def logit_diff_from_epsilon(eps: float) -> float:
    """Inverse map: 2 atanh(eps) = log((1+eps)/(1-eps)).

    A certain prediction (|eps| = 1) has no finite logit difference, so the
    domain boundary raises instead of clamping.
    """
    if abs(eps) >= 1.0:
        raise SaturationError(f"|eps| = {abs(eps)} >= 1 has no finite logit difference")
    return math.log((1.0 + eps) / (1.0 - eps))


def hyperplane_distance(g: PredictionGeometry) -> float:
    """Signed distance from the prediction vector to the locus dl = 0.

    Positive on the side favouring the first candidate.
    """
    norm = float(np.linalg.norm(g.embedding_diff))
    if norm == 0.0:
        raise ModelValidationError("embedding difference is the zero vector")
    return logit_diff(g) / norm
