"""Exception types raised across the package."""

from __future__ import annotations


class K3MirrorError(Exception):
    """Base class for every error raised by k3mirror."""


class ZeroWeight(K3MirrorError, ValueError):
    pass


class UnsupportedPrime(K3MirrorError, ValueError):
    pass


class NotInvertible(K3MirrorError, ValueError):
    """The exponent data is not a sum of Fermat, chain and loop blocks."""


class ParseError(K3MirrorError, ValueError):
    pass


class NonIntegerGenus(K3MirrorError, ArithmeticError):
    """The genus formula did not produce a nonnegative integer."""


class Inconsistent(K3MirrorError, ArithmeticError):
    """Numerical invariants that cannot be realised simultaneously."""


class Ambiguous(K3MirrorError):
    """More than one classification row is compatible with the geometry."""

    def __init__(self, message: str, candidates: list[dict]):
        super().__init__(message)
        self.candidates = candidates


class NoConfiguration(K3MirrorError):
    """No classification row is compatible with the geometry."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class CongruenceViolation(K3MirrorError, ValueError):
    pass


class NoSuchRow(K3MirrorError, KeyError):
    pass


class NotMirrorHyperbolic(K3MirrorError, ValueError):
    pass


class InvalidPair(K3MirrorError, ValueError):
    """(W, G) violates the Calabi-Yau condition or is not of the form x^p + f."""
