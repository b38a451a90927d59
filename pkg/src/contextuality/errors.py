"""Exception types shared across the library.

All domain errors derive from :class:`ContextualityError`, so callers can
catch one base class at API boundaries (the CLI maps them to exit code 2,
except budget exhaustion which maps to exit code 3).
"""


class ContextualityError(Exception):
    """Base class for all errors raised by this library."""


class EmptyVertexSet(ContextualityError):
    pass


class EdgeWithUnknownVertex(ContextualityError):
    pass


class UncoveredVertex(ContextualityError):
    pass


class EmptyInducedEdge(ContextualityError):
    """Restricting to W wiped out an edge entirely, so no model can exist."""


class VertexSetMismatch(ContextualityError):
    pass


class ScenarioMismatch(ContextualityError):
    pass


class MissingWeight(ContextualityError):
    pass


class NegativeWeight(ContextualityError):
    pass


class EdgeSumViolation(ContextualityError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = ", ".join(f"{edge}: sum={total}" for edge, total in self.violations)
        super().__init__(f"edge normalization violated: {lines}")


class CombinatorialBlowup(ContextualityError):
    pass


class BudgetExceeded(ContextualityError):
    pass


class DimensionCap(ContextualityError):
    pass


class SizeCap(ContextualityError):
    pass


class NonIntegerWeight(ContextualityError):
    pass


class EmptyPolytope(ContextualityError):
    pass


class IsolatedNode(ContextualityError):
    pass


class LabelingNotOrthogonal(ContextualityError):
    pass


class SubnormalizationViolated(ContextualityError):
    pass
