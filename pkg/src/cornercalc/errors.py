"""Exception types shared across the package."""


class CornerCalcError(Exception):
    """Base class for all domain errors raised by this package."""


class PointOutsideModel(CornerCalcError):
    """A coordinate vector does not lie in the stated model corner."""


class ModelMismatch(CornerCalcError):
    """Two operands disagree on the model corner they must share."""


class BadLabel(CornerCalcError):
    """A stratum label refers to faces the model does not have."""


class BadFace(CornerCalcError):
    """A face index is outside the model's face range."""


class InvalidGerm(CornerCalcError):
    """Transfer data and Jacobian do not satisfy the germ invariants."""


class NotSubmersion(CornerCalcError):
    """An operation requiring a submersion germ received something else."""


class NotTransverse(CornerCalcError):
    """A fibre-product operation received a non-transverse pair."""


class NotSmoothAtOrigin(CornerCalcError):
    """A polynomial map is not smooth at the origin, so it has no germ."""


class NoMediator(CornerCalcError):
    """No mediating germ exists; the universal-property premise fails."""


class HypothesisNotMet(CornerCalcError):
    """A checker was invoked on inputs outside its stated hypotheses."""


class InternalInvariantViolation(CornerCalcError):
    """A fact that is provable from the preconditions failed to hold.

    Raised instead of silently proceeding: this always signals a bug in
    the caller or in this package, never bad user input.
    """


class ParseError(CornerCalcError):
    """Malformed textual or JSON input."""
