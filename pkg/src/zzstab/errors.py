"""Exception hierarchy shared by all zzstab modules."""


class ZZStabError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionError(ZZStabError):
    """Vector/matrix sizes do not match the graph or each other."""


class CompositionError(ZZStabError):
    """Walks or matrices composed with mismatched endpoints."""


class ContractViolation(ZZStabError):
    """A structural precondition failed (d^2 != 0, bad chain map, ...)."""


class NonFiniteTypeError(ZZStabError):
    """Root closure exceeded its cap; graph is not of finite (ADE) type."""


class NormalizationError(ZZStabError):
    """Zero complex cannot be shift-normalized."""


class DegenerateChargeError(ZZStabError):
    """A central charge vanished on an object where that is not allowed."""


class MembershipError(ZZStabError):
    """Object is not a member of the requested heart."""


class StabilityError(ZZStabError):
    """Charge data violates the stability-function condition."""


class GenericityError(ZZStabError):
    """Path is not generic: simultaneous crossings or hyperplane proximity."""


class RefinementError(ZZStabError):
    """Path crossed a non-simple wall for the current heart; subdivide it."""


class NotALoopError(ZZStabError):
    """Monodromy endpoint does not close up (plain or quotient sense)."""


class WallError(ZZStabError):
    """Charge lies on a wall where a chamber was required."""
