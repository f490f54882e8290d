"""Contextuality measures for cyclic empirical models.

Sheaf-style contextual/signalling fractions by linear programming,
Contextuality-by-Default statistics, the two-noun/three-modifier anaphora
schema that produces PR-box-support models from masked-prediction
probabilities, and a batch pipeline over line-delimited records.
"""

from .cbd import CyclicSystemStats, cnt1, direct_influence, from_empirical, is_cbd_contextual, s_odd
from .fractions import Decomposition, SheafVerdict, contextual_fraction, sheaf_contextual, signalling_fraction
from .geometry import (
    PredictionGeometry,
    epsilon_from_logit_diff,
    hyperplane_distance,
    logit_diff,
    logit_diff_from_epsilon,
)
from .prlike import (
    ContextualityReport,
    PrLikeModel,
    analyze,
    canonicalize,
    cf_analytic,
    delta_analytic,
    delta_bounds,
    from_probabilities,
    is_symmetric,
    sf_analytic,
    to_empirical,
)
from .records import ProbabilityRecord, RecordFeatures, parse_records, serialize_record
from .scenario import (
    EmpiricalModel,
    GlobalAssignment,
    MeasurementScenario,
    PossibilisticModel,
    cyclic_scenario,
    global_sections,
    is_logically_contextual,
    is_no_signalling,
    is_strongly_contextual,
    marginal,
    model_from_rows,
    possibilistic_collapse,
    validate,
)
from .schema import SchemaInstance, build_model, normalize_pair, render_sentences

__version__ = "0.1.0"
