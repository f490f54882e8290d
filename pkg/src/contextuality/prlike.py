"""The epsilon-parametrised family of models sharing a PR-box support.

A rank-n model of this family lives on the n-cycle: every context is either
perfectly correlated or perfectly anti-correlated in support, with one free
parameter eps per context measuring the imbalance of its two live cells.
The number of anti-correlated contexts is odd; the canonical form keeps a
single one, in the last position, which is what the closed-form direct
influence assumes.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cbd, fractions, scenario
from .errors import ModelValidationError
from .scenario import EmpiricalModel


@dataclass(frozen=True)
class PrLikeModel:
    """Cyclic model with PR-box support, one eps in [-1, 1] per context.

    `anticorrelated` holds 1-based context indices (context i couples
    observables x_i and x_{i+1}); its cardinality must be odd.
    """

    epsilons: tuple[float, ...]
    anticorrelated: frozenset[int] | None = None  # None: last context only

    def __post_init__(self):
        object.__setattr__(self, "epsilons", tuple(float(e) for e in self.epsilons))
        if self.anticorrelated is None:
            object.__setattr__(self, "anticorrelated", frozenset({self.rank}))
        else:
            object.__setattr__(self, "anticorrelated", frozenset(self.anticorrelated))
        if self.rank < 3:
            raise ModelValidationError(f"rank must be >= 3, got {self.rank}")
        if any(abs(e) > 1.0 for e in self.epsilons):
            raise ModelValidationError("every epsilon must lie in [-1, 1]")
        if len(self.anticorrelated) % 2 == 0:
            raise ModelValidationError("number of anti-correlated contexts must be odd")
        if not all(1 <= i <= self.rank for i in self.anticorrelated):
            raise ModelValidationError("anti-correlated context indices must be in 1..rank")

    @property
    def rank(self) -> int:
        return len(self.epsilons)

    @property
    def is_canonical(self) -> bool:
        return self.anticorrelated == frozenset({self.rank})


@dataclass(frozen=True)
class ContextualityReport:
    """Per-model measures and verdicts under both frameworks."""

    sf: float
    delta: float
    cf: float
    cnt1: float
    sheaf_flag: bool
    cbd_flag: bool


def from_probabilities(p_first, anticorrelated=None) -> PrLikeModel:
    """Build a model from the per-context probability of the first outcome.

    eps_i = 2 p_i - 1, so p_i = (1 + eps_i) / 2 recovers the input.
    """
    eps = []
    for i, p in enumerate(p_first):
        if not 0.0 <= p <= 1.0:
            raise ModelValidationError(f"probability {p} at position {i} outside [0, 1]")
        eps.append(2.0 * p - 1.0)
    if anticorrelated is None:
        anticorrelated = frozenset({len(eps)})
    return PrLikeModel(tuple(eps), frozenset(anticorrelated))


def to_empirical(pr: PrLikeModel) -> EmpiricalModel:
    """Expand to the full per-context probability tables on the n-cycle.

    Correlated contexts put (1+eps)/2 on (0,0) and (1-eps)/2 on (1,1);
    anti-correlated contexts put (1+eps)/2 on (0,1) and (1-eps)/2 on (1,0).
    """
    cyc = scenario.cyclic_scenario(pr.rank)
    rows = []
    for i, eps in enumerate(pr.epsilons, start=1):
        hi, lo = (1.0 + eps) / 2.0, (1.0 - eps) / 2.0
        if i in pr.anticorrelated:
            rows.append([0.0, hi, lo, 0.0])
        else:
            rows.append([hi, 0.0, 0.0, lo])
    return scenario.model_from_rows(cyc, rows)


def canonicalize(pr: PrLikeModel) -> PrLikeModel:
    """Relabel outcomes observable-by-observable until only the last context
    is anti-correlated.

    Flipping the outcome labels of observable x_{i+1} toggles the
    correlation type of contexts i and i+1 and negates eps_{i+1}; sweeping
    the cycle moves any odd anti-correlation pattern onto the last context
    without changing the underlying empirical model.
    """
    eps = list(pr.epsilons)
    anti = set(pr.anticorrelated)
    n = pr.rank
    for i in range(1, n):
        if i in anti:
            anti.symmetric_difference_update({i, i + 1})
            eps[i] = -eps[i]  # eps of context i+1 (0-based slot i)
    assert anti == {n}
    return PrLikeModel(tuple(eps), frozenset({n}))


def sf_analytic(pr: PrLikeModel) -> float:
    """Signalling fraction: the largest absolute eps."""
    return max(abs(e) for e in pr.epsilons)


def cf_analytic(pr: PrLikeModel) -> float:
    """Contextual fraction: always 1 on a PR-box support."""
    return 1.0


def delta_analytic(pr: PrLikeModel) -> float:
    """Direct influence in canonical form:
    |e1-e2| + ... + |e_{n-1}-e_n| + |e_n+e1|.
    """
    if not pr.is_canonical:
        raise ModelValidationError(
            "direct-influence formula needs the canonical form; call canonicalize() first"
        )
    eps = pr.epsilons
    total = sum(abs(eps[i] - eps[i + 1]) for i in range(pr.rank - 1))
    return total + abs(eps[-1] + eps[0])


def delta_bounds(pr: PrLikeModel) -> tuple[float, float]:
    """Attainable range of the direct influence given the signalling fraction:
    2 SF below, 2n SF (n odd) or 2(n-1) SF (n even) above.
    """
    sf = sf_analytic(pr)
    upper = 2 * pr.rank * sf if pr.rank % 2 == 1 else 2 * (pr.rank - 1) * sf
    return 2 * sf, upper


def analyze(pr: PrLikeModel, compute_cf_lp: bool = False) -> ContextualityReport:
    """Full per-model report.

    The sheaf verdict is CF > 2n SF with CF = 1 analytically (or the LP
    value when requested); the CbD verdict is CNT1 > 0, which on this
    family reduces to direct influence below 2.
    """
    sf = sf_analytic(pr)
    delta = delta_analytic(canonicalize(pr))
    if compute_cf_lp:
        cf = fractions.contextual_fraction(to_empirical(pr)).fraction
    else:
        cf = cf_analytic(pr)
    cnt1 = 2.0 - delta
    return ContextualityReport(
        sf=sf,
        delta=delta,
        cf=cf,
        cnt1=cnt1,
        sheaf_flag=cf > 2 * pr.rank * sf,
        cbd_flag=cnt1 > 0.0,
    )


def cnt1_via_cbd(pr: PrLikeModel) -> float:
    """CNT1 recomputed from the expanded empirical model (cross-check path)."""
    return cbd.cnt1(cbd.from_empirical(to_empirical(pr)))


def is_symmetric(model: EmpiricalModel, tol: float = 1e-12) -> bool:
    """True iff every context table is invariant under swapping the two
    outcome labels on all observables at once."""
    if len(model.scenario.outcomes) != 2:
        raise ModelValidationError("outcome-swap symmetry is defined for binary outcomes only")
    o0, o1 = model.scenario.outcomes
    swap = {o0: o1, o1: o0}
    for table in model.tables:
        for s, p in table.items():
            swapped = tuple(swap[o] for o in s)
            if abs(p - table[swapped]) > tol:
                return False
    return True
