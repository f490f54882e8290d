"""Measurement scenarios and empirical models.

A scenario is a set of observables, a cover of jointly-measurable contexts,
and a shared outcome set.  An empirical model attaches one joint probability
table to every context.  This module provides construction, validation,
marginalisation, no-signalling checks, possibilistic collapse and
global-section (logical / strong contextuality) analysis.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import (
    DegenerateScenarioError,
    EnumerationGuardError,
    ModelValidationError,
)

ROW_SUM_TOL = 1e-9
ENUMERATION_GUARD = 2**20


@dataclass(frozen=True)
class MeasurementScenario:
    """Observables, a covering family of contexts, and the outcome set.

    Contexts are ordered tuples of observable names; joint outcomes for a
    context are tuples of outcomes in the same positional order.
    """

    observables: tuple[str, ...]
    contexts: tuple[tuple[str, ...], ...]
    outcomes: tuple[str, ...]

    def __post_init__(self):
        names = list(self.observables) + list(self.outcomes)
        if len(set(self.observables)) != len(self.observables):
            raise DegenerateScenarioError("duplicate observable names")
        if len(set(self.outcomes)) != len(self.outcomes):
            raise DegenerateScenarioError("duplicate outcome labels")
        if len(self.outcomes) < 2:
            raise DegenerateScenarioError("need at least 2 outcomes")
        del names
        covered = set()
        seen = set()
        for ctx in self.contexts:
            key = frozenset(ctx)
            if len(key) != len(ctx):
                raise DegenerateScenarioError(f"context {ctx} repeats an observable")
            if key in seen:
                raise DegenerateScenarioError(f"context {ctx} duplicates another context")
            seen.add(key)
            for name in ctx:
                if name not in self.observables:
                    raise DegenerateScenarioError(f"context observable {name!r} not declared")
            covered |= set(ctx)
        if covered != set(self.observables):
            missing = set(self.observables) - covered
            raise DegenerateScenarioError(f"observables not covered by any context: {sorted(missing)}")

    def joint_outcomes(self, context_index: int) -> list[tuple[str, ...]]:
        """All joint outcomes of a context, in lexicographic outcome order."""
        size = len(self.contexts[context_index])
        return list(itertools.product(self.outcomes, repeat=size))

    def contexts_containing(self, observable: str) -> list[int]:
        return [i for i, ctx in enumerate(self.contexts) if observable in ctx]


@dataclass(frozen=True)
class EmpiricalModel:
    """One probability table per context, rows in `scenario.contexts` order.

    Each table maps joint outcome tuples to probabilities and is stored as a
    dense dict covering every joint outcome of its context.
    """

    scenario: MeasurementScenario
    tables: tuple[dict[tuple[str, ...], float], ...]

    def table_as_row(self, context_index: int) -> list[float]:
        """Flatten a context table in lexicographic joint-outcome order."""
        return [self.tables[context_index][s] for s in self.scenario.joint_outcomes(context_index)]


@dataclass(frozen=True)
class PossibilisticModel:
    """Boolean support tables: 1 = possible joint outcome, 0 = impossible."""

    scenario: MeasurementScenario
    supports: tuple[dict[tuple[str, ...], bool], ...]

    def __post_init__(self):
        for i, table in enumerate(self.supports):
            if not any(table.values()):
                raise ModelValidationError(f"context {i} has empty support")


@dataclass(frozen=True, eq=True, unsafe_hash=False)
class GlobalAssignment:
    """A total deterministic assignment of one outcome to every observable."""

    assignment: dict[str, str]

    def restrict(self, context: tuple[str, ...]) -> tuple[str, ...]:
        return tuple(self.assignment[x] for x in context)


def cyclic_scenario(k: int, outcomes=("0", "1")) -> MeasurementScenario:
    """Build the k-cycle scenario: contexts {x1,x2}, {x2,x3}, ..., {xk,x1}.

    k = 2 would duplicate a context as a set, so ranks below 3 are rejected.
    """
    if k < 3:
        raise DegenerateScenarioError(f"cyclic scenario needs k >= 3, got {k}")
    if len(outcomes) < 2:
        raise DegenerateScenarioError("need at least 2 outcomes")
    observables = tuple(f"x{i + 1}" for i in range(k))
    contexts = tuple((observables[i], observables[(i + 1) % k]) for i in range(k))
    return MeasurementScenario(observables, contexts, tuple(outcomes))


def model_from_rows(scenario: MeasurementScenario, rows) -> EmpiricalModel:
    """Assemble a model from flat per-context rows (lexicographic outcome order)."""
    tables = []
    for i, row in enumerate(rows):
        joint = scenario.joint_outcomes(i)
        if len(row) != len(joint):
            raise ModelValidationError(
                f"context {i}: expected {len(joint)} entries, got {len(row)}"
            )
        tables.append({s: float(p) for s, p in zip(joint, row)})
    model = EmpiricalModel(scenario, tuple(tables))
    validate(model)
    return model


def validate(model: EmpiricalModel) -> None:
    """Check shape, non-negativity and row normalisation of every table."""
    scenario = model.scenario
    if len(model.tables) != len(scenario.contexts):
        raise ModelValidationError(
            f"expected {len(scenario.contexts)} tables, got {len(model.tables)}"
        )
    for i, table in enumerate(model.tables):
        joint = scenario.joint_outcomes(i)
        if set(table.keys()) != set(joint):
            raise ModelValidationError(f"context {i}: table does not cover all joint outcomes")
        total = 0.0
        for s in joint:
            p = table[s]
            if p < 0.0:
                raise ModelValidationError(f"context {i}: negative probability {p} at {s}")
            total += p
        if abs(total - 1.0) > ROW_SUM_TOL:
            raise ModelValidationError(f"context {i}: row sums to {total}, expected 1")


def marginal(model: EmpiricalModel, context_index: int, observable: str) -> dict[str, float]:
    """Marginal distribution of one observable inside one context."""
    context = model.scenario.contexts[context_index]
    if observable not in context:
        raise ModelValidationError(
            f"observable {observable!r} not in context {context_index} {context}"
        )
    pos = context.index(observable)
    dist = {o: 0.0 for o in model.scenario.outcomes}
    for s, p in model.tables[context_index].items():
        dist[s[pos]] += p
    return dist


def is_no_signalling(model: EmpiricalModel, tol: float = 1e-9) -> bool:
    """True iff marginals of every shared observable agree across contexts."""
    for observable in model.scenario.observables:
        hosts = model.scenario.contexts_containing(observable)
        reference = None
        for i in hosts:
            m = marginal(model, i, observable)
            if reference is None:
                reference = m
                continue
            for o in model.scenario.outcomes:
                if abs(m[o] - reference[o]) > tol:
                    return False
    return True


def possibilistic_collapse(model: EmpiricalModel, support_eps: float = 0.0) -> PossibilisticModel:
    """Replace probabilities by their supports.

    The comparison is exact by default (entry > 0); pass `support_eps` to
    threshold noisy probabilities explicitly.
    """
    supports = tuple(
        {s: (p > support_eps) for s, p in table.items()} for table in model.tables
    )
    return PossibilisticModel(model.scenario, supports)


def global_sections(pm: PossibilisticModel) -> list[GlobalAssignment]:
    """All global assignments consistent with every context's support.

    Assignments are enumerated lexicographically in observable-declaration
    and outcome-declaration order.
    """
    scenario = pm.scenario
    total = len(scenario.outcomes) ** len(scenario.observables)
    if total > ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"{total} global assignments exceed the enumeration bound {ENUMERATION_GUARD}"
        )
    sections = []
    for values in itertools.product(scenario.outcomes, repeat=len(scenario.observables)):
        g = GlobalAssignment(dict(zip(scenario.observables, values)))
        if all(
            pm.supports[i][g.restrict(ctx)]
            for i, ctx in enumerate(scenario.contexts)
        ):
            sections.append(g)
    return sections


def is_logically_contextual(model: EmpiricalModel, support_eps: float = 0.0) -> bool:
    """True iff some possible joint outcome extends to no global section."""
    pm = possibilistic_collapse(model, support_eps)
    sections = global_sections(pm)
    for i, ctx in enumerate(model.scenario.contexts):
        for s, possible in pm.supports[i].items():
            if not possible:
                continue
            if not any(g.restrict(ctx) == s for g in sections):
                return True
    return False


def is_strongly_contextual(model: EmpiricalModel, support_eps: float = 0.0) -> bool:
    """True iff no global assignment is consistent with the supports."""
    return not global_sections(possibilistic_collapse(model, support_eps))


def to_json(model: EmpiricalModel) -> str:
    """Serialize to the interchange object format (one JSON object)."""
    payload = {
        "observables": list(model.scenario.observables),
        "outcomes": list(model.scenario.outcomes),
        "contexts": [list(ctx) for ctx in model.scenario.contexts],
        "tables": [model.table_as_row(i) for i in range(len(model.tables))],
    }
    return json.dumps(payload)


def from_json(text: str) -> EmpiricalModel:
    """Parse the interchange object format produced by `to_json`."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelValidationError(f"invalid model JSON: {exc}") from exc
    for key in ("observables", "outcomes", "contexts", "tables"):
        if key not in payload:
            raise ModelValidationError(f"model object missing key {key!r}")
    scenario = MeasurementScenario(
        tuple(payload["observables"]),
        tuple(tuple(ctx) for ctx in payload["contexts"]),
        tuple(payload["outcomes"]),
    )
    return model_from_rows(scenario, payload["tables"])
