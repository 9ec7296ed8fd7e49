"""Shared numeric conventions: tolerances, the dense-table cap, scalar checks."""

from __future__ import annotations

import math

from .errors import ArityTooLarge, InvalidBelief

#: Dense tables are capped at 2**N_MAX entries.
N_MAX = 24

#: Tolerance for "sums to one" and for unit-interval input noise.
EPS_SIMPLEX = 1e-9

#: Tolerance for q-feasibility against [q_min, q_max].
EPS_FEAS = 1e-12


def check_belief(value, name: str = "belief") -> float:
    """Validate a confidence value in [0, 1].

    Excursions within EPS_SIMPLEX (rounding noise in user data) are clamped
    to the boundary; anything larger raises InvalidBelief.
    """
    x = float(value)
    if not math.isfinite(x):
        raise InvalidBelief(f"{name} must be finite, got {value!r}")
    if x < -EPS_SIMPLEX or x > 1.0 + EPS_SIMPLEX:
        raise InvalidBelief(f"{name} must be in [0, 1], got {x}")
    if x < 0.0:
        return 0.0
    if x > 1.0:
        return 1.0
    return x


def check_arity(n, name: str = "arity") -> int:
    """Validate a table arity against the dense cap."""
    n = int(n)
    if n < 0:
        raise InvalidBelief(f"{name} must be nonnegative, got {n}")
    if n > N_MAX:
        raise ArityTooLarge(f"{name}={n} exceeds the dense-table cap N_MAX={N_MAX}")
    return n


def clip01(x: float) -> float:
    if x < 0.0:
        return 0.0
    if x > 1.0:
        return 1.0
    return float(x)
