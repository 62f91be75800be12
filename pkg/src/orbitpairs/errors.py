"""Exception hierarchy.

User-facing input problems raise ValueError subclasses; the remaining
exceptions signal internal consistency failures of the counting pipeline
and should never be seen on valid input.
"""


class OrbitPairsError(Exception):
    pass


class NonExactDivision(OrbitPairsError):
    """Polynomial division left a nonzero remainder."""


class NegativeExponent(OrbitPairsError):
    """A Laurent expansion would leave a negative power of q."""


class MissingContext(ValueError, OrbitPairsError):
    """An operation needing a finite row set was called without one."""


class NotComparable(ValueError, OrbitPairsError):
    """Moebius function requested on a non-interval pair of ideals."""


class IdealOutOfContext(ValueError, OrbitPairsError):
    """An order ideal has maximal points off the rows of the partition."""


class ContextMismatch(ValueError, OrbitPairsError):
    """An ideal argument fails its required lattice membership."""


class DegreeMismatch(OrbitPairsError):
    """A monicity/degree assertion on a computed polynomial failed."""


class NonIntegerResult(OrbitPairsError):
    """A count that must have integer coefficients came out rational."""


class BudgetExceeded(ValueError, OrbitPairsError):
    """An explicit enumeration would exceed the configured size budget."""
