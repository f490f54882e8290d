"""Batch statistics: correlations, polynomial-fit R2, entropies, vector
features, the signalling-fraction/direct-influence grid and similarity
sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ModelValidationError, UndefinedStatisticError

REGION_FORBIDDEN = "forbidden"
REGION_SHEAF_AND_CBD = "sheaf_and_cbd"
REGION_CBD_ONLY = "cbd_only"
REGION_NEITHER = "neither"


@dataclass(frozen=True)
class FeatureVector:
    """Per-record features correlated against the contextuality measures."""

    euclidean_dist: float
    bias_diff: float
    nouns_entropy: float
    adjectives_entropy: float
    cosine_similarity: float | None = None

    def __post_init__(self):
        if self.euclidean_dist < 0.0:
            raise ModelValidationError("euclidean_dist must be nonnegative")
        if self.nouns_entropy < 0.0 or self.adjectives_entropy < 0.0:
            raise ModelValidationError("entropies must be nonnegative")
        if self.cosine_similarity is not None and abs(self.cosine_similarity) > 1.0 + 1e-12:
            raise ModelValidationError("cosine similarity must lie in [-1, 1]")


@dataclass(frozen=True)
class Histogram2D:
    """Counts and region labels on the (sf, delta) plane.

    `region[i, j]` labels the bin with sf in [sf_edges[i], sf_edges[i+1])
    and delta in [delta_edges[j], delta_edges[j+1]).
    """

    sf_edges: np.ndarray
    delta_edges: np.ndarray
    counts: np.ndarray
    region: np.ndarray


def _as_arrays(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise UndefinedStatisticError("inputs must be equal-length 1-d sequences")
    if x.size < 2:
        raise UndefinedStatisticError("need at least 2 points")
    return x, y


def pearson(x, y) -> float:
    """Sample Pearson correlation coefficient."""
    x, y = _as_arrays(x, y)
    dx = x - x.mean()
    dy = y - y.mean()
    vx = float(dx @ dx)
    vy = float(dy @ dy)
    if vx == 0.0 or vy == 0.0:
        raise UndefinedStatisticError("correlation undefined: zero variance")
    return float(dx @ dy) / math.sqrt(vx * vy)


def average_ranks(x) -> np.ndarray:
    """1-based ranks; tied values share the average of their positions."""
    x = np.asarray(x, dtype=float)
    order = np.argsort(x, kind="stable")
    ranks = np.empty(x.size, dtype=float)
    i = 0
    while i < x.size:
        j = i
        while j + 1 < x.size and x[order[j + 1]] == x[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(x, y) -> float:
    """Pearson correlation of average ranks."""
    x, y = _as_arrays(x, y)
    return pearson(average_ranks(x), average_ranks(y))


def kendall(x, y) -> float:
    """Kendall's tau-b: pairwise concordance with tie correction."""
    x, y = _as_arrays(x, y)
    dx = np.sign(x[:, None] - x[None, :])
    dy = np.sign(y[:, None] - y[None, :])
    iu = np.triu_indices(x.size, k=1)
    sx = dx[iu].astype(np.int64)
    sy = dy[iu].astype(np.int64)
    concordant_minus_discordant = int(np.sum(sx * sy))
    n0 = x.size * (x.size - 1) // 2
    ties_x = n0 - int(np.sum(sx != 0))
    ties_y = n0 - int(np.sum(sy != 0))
    denom = math.sqrt(float(n0 - ties_x)) * math.sqrt(float(n0 - ties_y))
    if denom == 0.0:
        raise UndefinedStatisticError("tau undefined: one input is constant")
    return concordant_minus_discordant / denom


def polyfit_r2(x, y, degree: int) -> float:
    """R2 of a least-squares degree-d polynomial fit, clipped to [0, 1].

    The design matrix is a Vandermonde in standardised x with centred,
    scaled power columns for conditioning; a constant target returns 0 by
    convention.
    """
    x, y = _as_arrays(x, y)
    if degree < 1:
        raise UndefinedStatisticError("degree must be >= 1")
    if x.size <= degree:
        raise UndefinedStatisticError(f"need more than {degree} points for degree {degree}")
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return 0.0
    std = x.std()
    xs = (x - x.mean()) / std if std > 0 else x - x.mean()
    design = np.vander(xs, degree + 1, increasing=True)
    for j in range(1, degree + 1):
        col = design[:, j]
        col = col - col.mean()
        scale = math.sqrt(float(col @ col))
        design[:, j] = col / scale if scale > 0 else col
    coeffs, *_ = np.linalg.lstsq(design, y, rcond=None)
    residuals = y - design @ coeffs
    r2 = 1.0 - float(residuals @ residuals) / ss_tot
    return min(max(r2, 0.0), 1.0)


def entropy_bits(freqs) -> float:
    """Shannon entropy (base 2) of normalised frequencies; 0 log 0 = 0."""
    freqs = np.asarray(freqs, dtype=float)
    if np.any(freqs < 0.0):
        raise UndefinedStatisticError("frequencies must be nonnegative")
    total = float(freqs.sum())
    if total == 0.0:
        raise UndefinedStatisticError("entropy undefined: all frequencies are zero")
    p = freqs / total
    nonzero = p[p > 0.0]
    return float(-(nonzero * np.log2(nonzero)).sum()) + 0.0


def euclidean_distance(u, v) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise UndefinedStatisticError("vectors must have equal dimension")
    return float(np.linalg.norm(u - v))


def cosine_similarity(u, v) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise UndefinedStatisticError("vectors must have equal dimension")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise UndefinedStatisticError("cosine undefined for the zero vector")
    return float(u @ v) / (nu * nv)


def delta_upper_factor(rank: int) -> int:
    """Slope of the attainable upper boundary: 2n (n odd) or 2(n-1) (n even)."""
    return 2 * rank if rank % 2 == 1 else 2 * (rank - 1)


def sf_delta_grid(measures, bins: int = 200, rank: int = 3) -> Histogram2D:
    """Bin (sf, delta) pairs on [0,1] x [0, 2 rank] and label each bin.

    A bin is forbidden iff its whole rectangle misses the attainable band
    2 SF <= delta <= factor * SF, so any bin holding a valid measurement
    keeps a non-forbidden label even when the band's edge cuts through it.
    The contextuality sub-labels are evaluated at bin centres.
    """
    if bins < 1:
        raise UndefinedStatisticError("bins must be >= 1")
    sf_values = np.array([m[0] for m in measures], dtype=float)
    delta_values = np.array([m[1] for m in measures], dtype=float)
    sf_edges = np.linspace(0.0, 1.0, bins + 1)
    delta_edges = np.linspace(0.0, 2.0 * rank, bins + 1)
    if sf_values.size:
        counts, _, _ = np.histogram2d(sf_values, delta_values, bins=(sf_edges, delta_edges))
        counts = counts.astype(np.int64)
    else:
        counts = np.zeros((bins, bins), dtype=np.int64)

    factor = delta_upper_factor(rank)
    sheaf_cut = 1.0 / (2.0 * rank)
    region = np.empty((bins, bins), dtype=object)
    for i in range(bins):
        sf_lo, sf_hi = sf_edges[i], sf_edges[i + 1]
        sf_mid = (sf_lo + sf_hi) / 2.0
        for j in range(bins):
            d_lo, d_hi = delta_edges[j], delta_edges[j + 1]
            d_mid = (d_lo + d_hi) / 2.0
            if d_hi < 2.0 * sf_lo or d_lo > factor * sf_hi:
                region[i, j] = REGION_FORBIDDEN
            elif sf_mid < sheaf_cut and d_mid < 2.0:
                region[i, j] = REGION_SHEAF_AND_CBD
            elif d_mid < 2.0:
                region[i, j] = REGION_CBD_ONLY
            else:
                region[i, j] = REGION_NEITHER
    return Histogram2D(sf_edges, delta_edges, counts, region)


def similarity_sweep(records, percentiles) -> list[tuple[float, int, float, float]]:
    """Contextual fractions over the most-similar subsets.

    `records` are (sheaf_flag, cbd_flag, cosine) triples; each percentile q
    keeps the ceil(q/100 * N) records with the highest cosine and reports
    (q, subset size, sheaf fraction, cbd fraction).
    """
    records = list(records)
    if not records:
        raise UndefinedStatisticError("similarity sweep needs at least one record")
    # Stable order: cosine descending, then original position.
    order = sorted(range(len(records)), key=lambda i: (-records[i][2], i))
    out = []
    for q in percentiles:
        keep = math.ceil(q / 100.0 * len(records))
        if keep < 1:
            raise UndefinedStatisticError(f"percentile {q} selects an empty subset")
        subset = [records[i] for i in order[:keep]]
        sheaf = sum(1 for r in subset if r[0]) / keep
        cbd = sum(1 for r in subset if r[1]) / keep
        out.append((float(q), keep, sheaf, cbd))
    return out
