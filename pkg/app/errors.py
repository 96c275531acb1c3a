"""
Exception hierarchy for the verifier.

All errors derive from ValueError so callers that only care about
"bad input" can keep catching that.
"""


class VerificationError(ValueError):
    """Base class for every error raised by the services."""


class NotPrime(VerificationError):
    pass


class BadExponent(VerificationError):
    pass


class NotInvertible(VerificationError):
    pass


class CapExceeded(VerificationError):
    """Enumeration or table size beyond the configured cap."""


class TooLarge(CapExceeded):
    """Modulus beyond the configured modulus cap."""


class ModulusMismatch(VerificationError):
    pass
