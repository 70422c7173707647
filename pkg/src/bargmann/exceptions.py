"""Exception types raised across the package."""


class BargmannError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(BargmannError, ValueError):
    """Matrix is not square, or operands have mismatched dimensions."""


class HermiticityError(BargmannError, ValueError):
    """Matrix deviates from its adjoint beyond the allowed tolerance."""


class PositivityError(BargmannError, ValueError):
    """Operator has a negative eigenvalue (or a Bloch vector leaves the ball)."""


class TraceError(BargmannError, ValueError):
    """Operator trace is non-positive."""


class NormalizationError(BargmannError, ValueError):
    """Operation requires unit-trace states but received an unnormalized one."""


class WordError(BargmannError, ValueError):
    """Word is empty or contains a letter outside the state-set alphabet."""


class DocumentError(BargmannError, ValueError):
    """State-set JSON document is malformed."""


class DegenerateReferenceError(BargmannError, ValueError):
    """Reference state has a (near-)degenerate spectrum."""


class NumericError(BargmannError, RuntimeError):
    """A numerical routine failed (e.g. eigensolver did not converge)."""


class NumericInconsistencyError(BargmannError, RuntimeError):
    """A quantity that must be real/nonnegative came out badly complex/negative."""
