"""Exception types shared across the toolkit."""


class ContextualityError(Exception):
    """Base class for all toolkit errors."""


class DegenerateScenarioError(ContextualityError):
    """Scenario construction would produce duplicate or trivial contexts."""


class ModelValidationError(ContextualityError):
    """An empirical model violates a structural invariant."""


class EnumerationGuardError(ContextualityError):
    """Global-assignment enumeration would exceed the safety bound."""


class LpError(ContextualityError):
    """The LP solver failed or reported an unusable status."""


class SaturationError(ContextualityError):
    """A certain (|eps| >= 1) prediction has no finite logit difference."""


class DegeneratePredictionError(ContextualityError):
    """Both candidate probabilities are zero; normalisation is undefined."""


class UndefinedStatisticError(ContextualityError):
    """A statistic (correlation, entropy) is undefined on this input."""
