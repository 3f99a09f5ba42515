#!/usr/bin/env python3
"""Size guards and scan thresholds used by the enumeration routines."""

from dataclasses import dataclass, fields
import logging

from .errors import SizeGuardExceeded

log = logging.getLogger(__name__)

# entries per memo table for ideal arithmetic and quotients
CACHE_SIZE = 2 ** 14


@dataclass
class Limits:
    max_ring_size: int = 2 ** 24
    prime_scan_limit: int = 2 ** 12
    local_check_limit: int = 4096
    workers: int = 1


limits = Limits()


def configure(**overrides) -> Limits:
    """Update the process-wide limits; unknown keys are rejected."""
    known = {f.name for f in fields(Limits)}
    for key, value in overrides.items():
        if key not in known:
            raise KeyError(f"unknown limit {key!r}")
        if value is None:
            continue
        if int(value) < 1:
            raise ValueError(f"limit {key} must be positive, got {value}")
        setattr(limits, key, int(value))
    log.debug("limits now %s", limits)
    return limits


def check_size(count: int, what: str) -> None:
    if count > limits.max_ring_size:
        raise SizeGuardExceeded(what, count, limits.max_ring_size)
