#!/usr/bin/env python3
"""Exception hierarchy shared by the algebra modules and the CLI."""


class LabError(Exception):
    """Base class for every error raised by fmdlab."""


class InvalidPresentation(LabError, ValueError):
    """A ring presentation violates the ring axioms or a constructor precondition."""


class RingMismatch(LabError):
    """Operands belong to different rings."""


class NoEmbedding(LabError):
    """No unital embedding exists between the given fields."""


class SizeGuardExceeded(LabError):
    """An enumeration would iterate more elements than the configured guard allows."""

    def __init__(self, what: str, count: int, limit: int):
        super().__init__(f"{what}: {count} elements exceeds the size guard of {limit}")
        self.what = what
        self.count = count
        self.limit = limit


class PreconditionViolation(LabError):
    """An operation was called outside its domain (zero/unit ideal, wrong containment)."""


class ConstructionRefused(LabError):
    """A builder could not certify its exactness relation and emitted nothing."""


class ConfigError(LabError, ValueError):
    """The run configuration is malformed or names something unknown."""
