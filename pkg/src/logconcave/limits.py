"""Configurable resource caps.

All caps guard *exact* computations that could otherwise grow without
bound; hitting one raises ResourceLimit (or a subclass), never a silent
approximation.  The module-level instance can be replaced wholesale or
tweaked via `set_limits`; the CLI seeds it from LOGCONCAVE_* environment
variables.
"""

from __future__ import annotations

import dataclasses
import os


@dataclasses.dataclass
class Limits:
    max_dense_degree: int = 10**6       # dense Polynomial length cap
    max_strong_degree: int = 5000       # d^(2d) materialization cap
    max_expansion_degree: int = 10**5   # SPS expansion degree cap
    max_expansion_work: int = 10**7     # term-by-term multiplications per expand
    max_pow_bits: int = 10**8           # mantissa bits x exponent in Coefficient.pow
    max_shift_bits: int = 10**7         # dyadic alignment shift in Coefficient add/compare
    max_materialize_bits: int = 10**6   # |pow2| cap when converting to Fraction
    max_chain_points: int = 400         # max_convex_chain input cap
    max_brute_points: int = 12          # brute-force convex subset cap


LIMITS = Limits()

_ENV_PREFIX = "LOGCONCAVE_"


def set_limits(**kwargs: int) -> Limits:
    """Override selected caps in place; returns the live Limits object."""
    for name, value in kwargs.items():
        if not hasattr(LIMITS, name):
            raise AttributeError(f"unknown limit {name!r}")
        setattr(LIMITS, name, int(value))
    return LIMITS


def load_env_limits(environ: dict[str, str] | None = None) -> Limits:
    """Apply LOGCONCAVE_MAX_* environment overrides (e.g. LOGCONCAVE_MAX_DENSE_DEGREE)."""
    env = os.environ if environ is None else environ
    for field in dataclasses.fields(Limits):
        key = _ENV_PREFIX + field.name.upper()
        if key in env:
            setattr(LIMITS, field.name, int(env[key]))
    return LIMITS
