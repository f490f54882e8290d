"""Contextual fraction and signalling fraction via linear programming.

The contextual fraction is the least weight of the contextual part in a
convex split of the model into a non-contextual no-signalling part and a
rest; equivalently one maximises the total weight of a mixture of
deterministic global assignments dominated by the model.  The signalling
fraction is the least weight of the signalling part: one maximises the
common mass of a no-signalling sub-model dominated cell-wise by the model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import simplex
from .errors import EnumerationGuardError, LpError
from .scenario import (
    ENUMERATION_GUARD,
    EmpiricalModel,
    GlobalAssignment,
    validate,
)

LP_TOL = 1e-9


@dataclass(frozen=True)
class Decomposition:
    """Optimal split of a model, as witnessed by the LP solution.

    For the contextual fraction, `assignments`/`weights` carry the dominated
    mixture of global assignments (the non-contextual part, total mass
    1 - fraction).  For the signalling fraction, `sub_tables`/`common_mass`
    carry the dominated no-signalling sub-model and its per-context mass.
    `solver_status` is "optimal" on every successful return.
    """

    fraction: float
    solver_status: str
    assignments: tuple[GlobalAssignment, ...] | None = None
    weights: tuple[float, ...] | None = None
    sub_tables: tuple[dict[tuple[str, ...], float], ...] | None = None
    common_mass: float | None = None


def _all_assignments(model: EmpiricalModel) -> list[GlobalAssignment]:
    scenario = model.scenario
    total = len(scenario.outcomes) ** len(scenario.observables)
    if total > ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"{total} global assignments exceed the enumeration bound {ENUMERATION_GUARD}"
        )
    return [
        GlobalAssignment(dict(zip(scenario.observables, values)))
        for values in itertools.product(scenario.outcomes, repeat=len(scenario.observables))
    ]


def contextual_fraction(model: EmpiricalModel) -> Decomposition:
    """Minimum weight of the contextual part in a convex split of the model.

    Maximises sum(w_g) subject to, for every context C and joint outcome s,
    sum of w_g over assignments g restricting to s being at most e_C(s).
    Non-contextual no-signalling models are exactly such mixtures, so the
    fraction is 1 minus the optimum.
    """
    validate(model)
    assignments = _all_assignments(model)
    scenario = model.scenario
    n = len(assignments)

    rows = []
    bounds = []
    for ci, ctx in enumerate(scenario.contexts):
        for s in scenario.joint_outcomes(ci):
            row = np.fromiter(
                (1.0 if g.restrict(ctx) == s else 0.0 for g in assignments),
                dtype=float,
                count=n,
            )
            rows.append(row)
            bounds.append(model.tables[ci][s])
    result = simplex.maximize(np.ones(n), np.array(rows), np.array(bounds), tol=LP_TOL)
    if result.status != "optimal":
        raise LpError(f"contextual-fraction LP ended with status {result.status}")
    weight = min(max(result.objective, 0.0), 1.0)
    return Decomposition(
        fraction=1.0 - weight,
        solver_status="optimal",
        assignments=tuple(assignments),
        weights=tuple(float(w) for w in result.x),
    )


def signalling_fraction(model: EmpiricalModel) -> Decomposition:
    """Minimum weight of the signalling part in a convex split of the model.

    Variables are one sub-probability table f_C per context plus a shared
    mass c; f is dominated by the model cell-wise, every f_C sums to c, and
    marginals of shared observables agree.  The fraction is 1 - max c, and
    f / c is the no-signalling part of the split.
    """
    validate(model)
    scenario = model.scenario

    index = {}  # (context index, joint outcome) -> LP column
    for ci in range(len(scenario.contexts)):
        for s in scenario.joint_outcomes(ci):
            index[(ci, s)] = len(index)
    c_col = len(index)
    ncols = c_col + 1

    a_eq, b_eq = [], []
    # Each context's sub-table carries the same total mass c.
    for ci in range(len(scenario.contexts)):
        row = np.zeros(ncols)
        for s in scenario.joint_outcomes(ci):
            row[index[(ci, s)]] = 1.0
        row[c_col] = -1.0
        a_eq.append(row)
        b_eq.append(0.0)
    # Marginals of each shared observable agree across its host contexts
    # (the last outcome is implied by the equal-mass rows).
    for observable in scenario.observables:
        hosts = scenario.contexts_containing(observable)
        ref = hosts[0]
        ref_pos = scenario.contexts[ref].index(observable)
        for other in hosts[1:]:
            other_pos = scenario.contexts[other].index(observable)
            for outcome in scenario.outcomes[:-1]:
                row = np.zeros(ncols)
                for s in scenario.joint_outcomes(ref):
                    if s[ref_pos] == outcome:
                        row[index[(ref, s)]] += 1.0
                for s in scenario.joint_outcomes(other):
                    if s[other_pos] == outcome:
                        row[index[(other, s)]] -= 1.0
                a_eq.append(row)
                b_eq.append(0.0)

    a_ub, b_ub = [], []
    for (ci, s), col in index.items():
        row = np.zeros(ncols)
        row[col] = 1.0
        a_ub.append(row)
        b_ub.append(model.tables[ci][s])

    objective = np.zeros(ncols)
    objective[c_col] = 1.0
    result = simplex.maximize(objective, np.array(a_ub), np.array(b_ub), np.array(a_eq), np.array(b_eq), tol=LP_TOL)
    if result.status != "optimal":
        raise LpError(f"signalling-fraction LP ended with status {result.status}")
    mass = min(max(result.objective, 0.0), 1.0)
    sub_tables = tuple(
        {s: float(result.x[index[(ci, s)]]) for s in scenario.joint_outcomes(ci)}
        for ci in range(len(scenario.contexts))
    )
    return Decomposition(
        fraction=1.0 - mass,
        solver_status="optimal",
        sub_tables=sub_tables,
        common_mass=mass,
    )


@dataclass(frozen=True)
class SheafVerdict:
    contextual: bool
    cf: float
    sf: float


def sheaf_contextual(model: EmpiricalModel) -> SheafVerdict:
    """Signalling-corrected contextuality criterion: CF > 2 |M| SF."""
    cf = contextual_fraction(model).fraction
    sf = signalling_fraction(model).fraction
    n_contexts = len(model.scenario.contexts)
    return SheafVerdict(contextual=cf > 2 * n_contexts * sf, cf=cf, sf=sf)
