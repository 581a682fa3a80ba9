"""Exception types shared across the package."""


class RelkinError(Exception):
    """Base class for errors raised by this package."""


class DomainError(RelkinError):
    """A point lies outside the domain where a field or profile is defined."""


class PreconditionError(RelkinError):
    """A documented precondition of an operation does not hold."""


class IntegralCurveError(PreconditionError):
    """The supplied world line is not an integral curve of the frame field."""


class ReturnConditionError(PreconditionError):
    """The world line velocity does not return to its initial value at s_T."""


class MeaningfulnessError(PreconditionError):
    """Frame-space precession is requested where it is not defined."""


class OrthogonalTimeError(RelkinError):
    """Orthogonal-time projection failed (no root, several roots, or a
    singular Newton denominator)."""


class StepRejectedError(RelkinError):
    """Halving the integrator step changed the result beyond tolerance."""


class ScenarioError(RelkinError):
    """A scenario file is malformed or inconsistent."""
