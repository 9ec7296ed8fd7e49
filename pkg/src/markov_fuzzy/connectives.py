"""One-parameter families of fuzzy connectives.

Two predicates with confidences p1 and p2 admit a one-parameter family of
joint 2x2 distributions; the parameter q is the confidence that *neither*
predicate holds.  Each binary connective then has a closed-form confidence
in terms of (p1, p2, q):

    and:      p1 + p2 + q - 1
    or:       1 - q
    implies:  p2 + q

The feasible range of q is [q_min, q_max]; the endpoints reproduce the
classic extremal fuzzy connectives and q_indep = (1-p1)(1-p2) reproduces
the independent ("product") flavor.  All functions here are pure scalar
maps and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._common import EPS_FEAS, check_belief, clip01
from .errors import InfeasibleQ

KINDS = ("and", "or", "implies")
FLAVORS = ("min", "indep", "max")


@dataclass(frozen=True)
class QBounds:
    """Feasible range and independence point for the both-false confidence."""

    q_min: float
    q_indep: float
    q_max: float

    def __iter__(self):
        return iter((self.q_min, self.q_indep, self.q_max))

    def contains(self, q: float, tol: float = EPS_FEAS) -> bool:
        return self.q_min - tol <= q <= self.q_max + tol


def fuzzy_not(p: float) -> float:
    """Confidence of the negated predicate: 1 - p."""
    return 1.0 - check_belief(p, "p")


def q_bounds(p1: float, p2: float) -> QBounds:
    """Feasible q range for marginals (p1, p2).

    q_min = max(0, 1 - (p1 + p2)), q_max = 1 - max(p1, p2), and the
    independence value q_indep = (1 - p1)(1 - p2) always lies between them.
    """
    p1 = check_belief(p1, "p1")
    p2 = check_belief(p2, "p2")
    q_min = max(0.0, 1.0 - (p1 + p2))
    q_max = 1.0 - max(p1, p2)
    q_indep = (1.0 - p1) * (1.0 - p2)
    # Guard against rounding placing q_indep a hair outside the interval.
    q_indep = min(max(q_indep, q_min), q_max)
    return QBounds(q_min=q_min, q_indep=q_indep, q_max=q_max)


def clamp_q(p1: float, p2: float, q: float) -> float:
    """Project q onto the feasible interval [q_min, q_max] of (p1, p2)."""
    b = q_bounds(p1, p2)
    return min(max(float(q), b.q_min), b.q_max)


def _feasible_q(p1: float, p2: float, q) -> tuple[float, float, float]:
    """Validate (p1, p2, q) and return the triple with q exactly feasible.

    q within EPS_FEAS of the interval is clamped to the boundary; anything
    farther out raises InfeasibleQ.
    """
    p1 = check_belief(p1, "p1")
    p2 = check_belief(p2, "p2")
    q = float(q)
    b = q_bounds(p1, p2)
    if not b.contains(q):
        raise InfeasibleQ(
            f"q={q} outside feasible range [{b.q_min}, {b.q_max}] "
            f"for marginals ({p1}, {p2})"
        )
    return p1, p2, min(max(q, b.q_min), b.q_max)


def and_q(p1: float, p2: float, q: float) -> float:
    """Confidence of the conjunction under both-false confidence q."""
    p1, p2, q = _feasible_q(p1, p2, q)
    return clip01(p1 + p2 + q - 1.0)


def or_q(p1: float, p2: float, q: float) -> float:
    """Confidence of the disjunction under both-false confidence q."""
    p1, p2, q = _feasible_q(p1, p2, q)
    return clip01(1.0 - q)


def implies_q(p1: float, p2: float, q: float) -> float:
    """Confidence of the implication under both-false confidence q."""
    p1, p2, q = _feasible_q(p1, p2, q)
    return clip01(p2 + q)


def classic(p1: float, p2: float, kind: str, flavor: str) -> float:
    """Closed-form classic fuzzy connectives.

    kind is one of "and", "or", "implies"; flavor one of "min", "indep",
    "max".  Each flavor equals the q-parametrized connective at a specific
    q: the "and" family pairs min with q_min and max with q_max, while the
    "or" and "implies" families pair min with q_max and max with q_min
    (their values decrease in q for "or", increase for "implies"; the
    min/max names follow the value ordering, not the q endpoint).
    """
    p1 = check_belief(p1, "p1")
    p2 = check_belief(p2, "p2")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
    if kind == "and":
        if flavor == "min":
            return max(0.0, p1 + p2 - 1.0)
        if flavor == "indep":
            return p1 * p2
        return min(p1, p2)
    if kind == "or":
        if flavor == "min":
            return max(p1, p2)
        if flavor == "indep":
            return p1 + p2 - p1 * p2
        return min(1.0, p1 + p2)
    # implies
    if flavor == "min":
        return max(p2, 1.0 - p1)
    if flavor == "indep":
        return 1.0 - p1 + p1 * p2
    return min(1.0, 1.0 + p2 - p1)


def de_morgan_dual(p1: float, p2: float, q: float) -> tuple[float, float, float]:
    """Parameters of the de Morgan partner of an "or".

    Returns (1-p1, 1-p2, q') with q' = and_q(p1, p2, q), so that

        or_q(p1, p2, q) == 1 - and_q(1-p1, 1-p2, q')

    and q' is feasible for the negated marginals.
    """
    p1, p2, q = _feasible_q(p1, p2, q)
    q_dual = clip01(p1 + p2 + q - 1.0)
    n1, n2 = 1.0 - p1, 1.0 - p2
    # q' = p_TT of the original pair; feasible for (1-p1, 1-p2) by
    # construction, but rounding may leave it a hair outside.
    return n1, n2, clamp_q(n1, n2, q_dual)
