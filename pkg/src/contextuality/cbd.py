"""Contextuality-by-Default measures for binary cyclic systems.

Outcomes are encoded as +1 / -1 random variables per (observable, context)
pair; the framework compares each observable's expectation across its two
host contexts (direct influence) against the best odd-parity signed sum of
the per-context correlations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ModelValidationError
from .scenario import EmpiricalModel, marginal

# Encoding of the two outcome labels, in scenario declaration order.  The
# measures are invariant under consistent per-observable flips, so the
# choice only pins down reproducible intermediate values.
_ENCODING = (1.0, -1.0)


@dataclass(frozen=True)
class CyclicSystemStats:
    """Correlations per context and per-observable expectation pairs.

    `expectations[i]` holds observable x_{i+1}'s expectation in each of its
    two host contexts, in context order.
    """

    rank: int
    correlations: tuple[float, ...]
    expectations: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if any(abs(c) > 1.0 + 1e-12 for c in self.correlations):
            raise ModelValidationError("correlations must lie in [-1, 1]")
        for pair in self.expectations:
            if any(abs(v) > 1.0 + 1e-12 for v in pair):
                raise ModelValidationError("expectations must lie in [-1, 1]")


def _check_cyclic(model: EmpiricalModel) -> None:
    scenario = model.scenario
    if len(scenario.outcomes) != 2:
        raise ModelValidationError("CbD stats need binary outcomes")
    if len(scenario.contexts) != len(scenario.observables):
        raise ModelValidationError("not a cyclic scenario: |contexts| != |observables|")
    if any(len(ctx) != 2 for ctx in scenario.contexts):
        raise ModelValidationError("not a cyclic scenario: contexts must have size 2")
    for observable in scenario.observables:
        if len(scenario.contexts_containing(observable)) != 2:
            raise ModelValidationError(
                f"not a cyclic scenario: {observable!r} must appear in exactly 2 contexts"
            )
    # A single cycle, not a disjoint union of smaller ones.
    adjacency = {x: set() for x in scenario.observables}
    for a, b in scenario.contexts:
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = set()
    stack = [scenario.observables[0]]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        stack.extend(adjacency[node] - seen)
    if seen != set(scenario.observables):
        raise ModelValidationError("not a cyclic scenario: context graph is disconnected")


def from_empirical(model: EmpiricalModel) -> CyclicSystemStats:
    """Correlations and expectation pairs of a binary cyclic model."""
    _check_cyclic(model)
    scenario = model.scenario
    enc = dict(zip(scenario.outcomes, _ENCODING))

    correlations = []
    for ci in range(len(scenario.contexts)):
        c = sum(p * enc[s[0]] * enc[s[1]] for s, p in model.tables[ci].items())
        correlations.append(c)

    expectations = []
    for observable in scenario.observables:
        pair = []
        for ci in scenario.contexts_containing(observable):
            dist = marginal(model, ci, observable)
            pair.append(sum(enc[o] * p for o, p in dist.items()))
        expectations.append(tuple(pair))

    return CyclicSystemStats(
        rank=len(scenario.contexts),
        correlations=tuple(correlations),
        expectations=tuple(expectations),
    )


def s_odd(values) -> float:
    """Best signed sum over sign vectors with an odd number of -1 entries.

    Closed form: the full absolute sum when some entry is zero or an odd
    number of entries are negative; otherwise the cheapest single flip
    costs twice the smallest magnitude.
    """
    values = tuple(float(v) for v in values)
    if not values:
        raise ModelValidationError("s_odd needs a nonempty vector")
    total = sum(abs(v) for v in values)
    negatives = sum(1 for v in values if v < 0.0)
    if negatives % 2 == 1 or any(v == 0.0 for v in values):
        return total
    return total - 2.0 * min(abs(v) for v in values)


def direct_influence(stats: CyclicSystemStats) -> float:
    """Total cross-context disagreement of the per-observable expectations."""
    return sum(abs(a - b) for a, b in stats.expectations)


def cnt1(stats: CyclicSystemStats) -> float:
    """s_odd of the correlations, minus direct influence, minus rank, plus 2."""
    return s_odd(stats.correlations) - direct_influence(stats) - stats.rank + 2.0


def is_cbd_contextual(stats: CyclicSystemStats) -> bool:
    return cnt1(stats) > 0.0
