"""Domain error taxonomy.

Every module raises subclasses of :class:`DomainError`; the CLI maps them
to exit status 1 with a machine-readable JSON payload on stderr.
"""


class DomainError(Exception):
    """Base class for all domain-level failures."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class NotAPave(DomainError):
    pass


class EmptyInterior(DomainError):
    pass


class NotAPaving(DomainError):
    pass


class NotAdmissible(DomainError):
    pass


class TooLarge(DomainError):
    pass


class WrongDimension(DomainError):
    pass


class Singular(DomainError):
    pass


class ZeroLambda(DomainError):
    pass


class ZeroMu(DomainError):
    pass


class InvalidData(DomainError):
    pass


class NotOnStratum(DomainError):
    pass


class NotAChain(DomainError):
    pass


class NoDominantChain(DomainError):
    pass


class NotConvexEnough(DomainError):
    pass


class NonInvertibleRoots(DomainError):
    pass


class NonIntegralExponent(DomainError):
    pass


class RootFindingFailed(DomainError):
    pass
