"""Exception types shared across the package."""

from __future__ import annotations


class PolyOracleError(Exception):
    """Base class for all package-specific errors."""


class ArityMismatch(PolyOracleError):
    """An evaluation point or operand has the wrong number of variables."""


class NotPrime(PolyOracleError):
    """A modulus that must be prime failed the primality test."""


class CapExceeded(PolyOracleError):
    """An intermediate object grew past its configured cap."""


class UniverseTooLarge(PolyOracleError):
    """The instance universe exceeds the desk-scale enumeration cap."""


class StreamTooLarge(PolyOracleError):
    """The literal monomial stream exceeds the enumeration cap."""


class ValueOutOfRange(PolyOracleError):
    """An input value lies outside its declared range."""


class TooLarge(PolyOracleError):
    """An exact-counting routine was called beyond its size cap."""


class PreconditionViolated(PolyOracleError):
    """A documented precondition of an algorithm does not hold."""
