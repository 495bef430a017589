"""Error types raised across the library.

Everything user-triggerable derives from MCGError so callers (and the
command line driver) can catch one base class.  Plain asserts are
reserved for internal invariants that cannot fail unless the library
itself is wrong.
"""


class MCGError(Exception):
    """Base class for all library errors."""


class FormatError(MCGError):
    """Malformed JSON input: wrong shape, missing key, bad literal."""


class DivisionByZero(MCGError, ZeroDivisionError):
    pass


class OrderMismatch(MCGError):
    """Mixed root-of-unity orders while coercion is disabled."""


class NotAMultiple(MCGError):
    """Requested order does not contain the current one."""


class NotFound(MCGError):
    """No square root exists within the requested field bound."""


class ShapeMismatch(MCGError):
    """Domain/codomain shapes do not line up for the attempted operation."""


class ParseError(MCGError):
    """Expression text could not be parsed; carries the offending position."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None
                         else f"{message} (at position {position})")
        self.position = position


class UnknownToken(ParseError):
    pass


class UnboundIdentifier(MCGError):
    """Expression refers to a name the evaluation context does not define."""


class Singular(MCGError):
    """Matrix inversion was requested for a singular matrix."""


class NotInvertible(MCGError):
    """An algebra element or structure map has no inverse."""


class NotFactorizable(MCGError):
    """The monodromy pairing is degenerate, so the construction stops."""


class NormalizationNeedsLargerField(MCGError):
    """Integral normalization needs a square root the field bound excludes.

    The rational (or monomial) quantity whose root is missing is kept on
    the exception so callers can retry over a bigger field.
    """

    def __init__(self, message, required_square=None):
        super().__init__(message)
        self.required_square = required_square


class ContextMismatch(MCGError):
    """Two-sided module structures live over different algebras."""


class PivotMissing(MCGError):
    """A duality map needs the ribbon/balancing element and none is set."""


class ContextIncomplete(MCGError):
    """A correlator build needs structure the context has not derived."""


class IndexOutOfRange(MCGError):
    """Generator index outside the valid range for the given surface."""


class ResourceBudgetExceeded(MCGError):
    """A check was skipped because it would exceed the size budget."""

    def __init__(self, message, skipped=()):
        super().__init__(message)
        self.skipped = tuple(skipped)


class NotCoprime(MCGError):
    """Group automorphism parameter must be a unit mod the group order."""


class AutomorphismRejected(MCGError):
    """Proposed twist fails the structure-preservation checks."""
