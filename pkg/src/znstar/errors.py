"""Exception taxonomy shared by all modules.

DomainError and its subclasses signal inputs outside a documented
precondition; ResourceLimitError signals a configured cap was exceeded.
FalsificationError is reserved for the one thing that must never be
silent: a construction backed by a proof failing its own recheck.
"""


class ZnStarError(Exception):
    """Base class for all package errors."""


class DomainError(ZnStarError, ValueError):
    """Input violates a documented precondition."""


class HypothesisViolationError(DomainError):
    """A formula's hypothesis (e.g. gcd(a, b) = 1) does not hold."""


class UnsupportedFamilyError(DomainError):
    """Operation does not apply to this function family."""


class ExceptionalModulusError(DomainError):
    """Modulus belongs to the finite exceptional set with no witness."""


class BelowThresholdError(DomainError):
    """Modulus does not exceed the construction's threshold constant."""


class ResourceLimitError(ZnStarError):
    """A configured resource cap (sieve, brute-force, scan) was exceeded."""


class FalsificationError(ZnStarError):
    """A construction that is guaranteed by proof failed verification.

    Raising this is an event worth reporting: it means either an
    implementation bug or a counterexample to a published proof.
    """
