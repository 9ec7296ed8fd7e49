"""Finite Boolean functions as dense truth tables, plus the formula AST.

A function f: B^n -> B^m is stored as a table of 2**n packed outputs: entry
a holds the m output bits of f at the input assignment encoded by a.  The
input/output bit convention matches the joint-table convention: variable i
(1-based) contributes 2**(i-1) to the index when true.

Formulas are immutable dataclass trees; `compile_formula` evaluates a
quantifier-free tree on every assignment at once (vectorized over the
table index), which by uniqueness of the minterm normal form is the same
function as the or-of-minterms expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ._common import N_MAX, check_arity
from .errors import (
    ArityMismatch,
    ArityTooLarge,
    DuplicateVariable,
    MultiOutput,
    UnboundVariable,
)


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """Truth table of a map B^arity_in -> B^arity_out."""

    arity_in: int
    arity_out: int
    table: np.ndarray

    def __post_init__(self):
        check_arity(self.arity_in, "arity_in")
        check_arity(self.arity_out, "arity_out")
        table = np.asarray(self.table, dtype=np.int64).copy()
        if table.shape != (1 << self.arity_in,):
            raise ArityMismatch(
                f"table length {table.size} does not match arity_in={self.arity_in}"
            )
        if table.size and (table.min() < 0 or table.max() >= (1 << self.arity_out)):
            raise ValueError(f"table entries must be {self.arity_out}-bit values")
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return (
            self.arity_in == other.arity_in
            and self.arity_out == other.arity_out
            and np.array_equal(self.table, other.table)
        )

    def __call__(self, assignment: Sequence[bool]) -> tuple[bool, ...]:
        """Apply to one assignment given as a sequence of booleans."""
        if len(assignment) != self.arity_in:
            raise ArityMismatch(
                f"expected {self.arity_in} inputs, got {len(assignment)}"
            )
        out = int(self.table[assignment_index(assignment)])
        return index_assignment(out, self.arity_out)

    def __repr__(self):
        return (
            f"BooleanFunction({self.arity_in}->{self.arity_out}, "
            f"table={self.table.tolist()})"
        )


def assignment_index(assignment: Sequence[bool]) -> int:
    """Pack an assignment (a1, ..., an) into its table index."""
    idx = 0
    for i, bit in enumerate(assignment):
        if bit:
            idx |= 1 << i
    return idx


def index_assignment(index: int, arity: int) -> tuple[bool, ...]:
    """Unpack a table index into the assignment (a1, ..., an)."""
    return tuple(bool((index >> i) & 1) for i in range(arity))


# ---------------------------------------------------------------------------
# Elementary gates
# ---------------------------------------------------------------------------


def identity_function(n: int) -> BooleanFunction:
    check_arity(n)
    return BooleanFunction(n, n, np.arange(1 << n, dtype=np.int64))


def not_function() -> BooleanFunction:
    return BooleanFunction(1, 1, np.array([1, 0]))


def and_function(n: int = 2) -> BooleanFunction:
    check_arity(n)
    table = np.zeros(1 << n, dtype=np.int64)
    table[-1] = 1
    return BooleanFunction(n, 1, table)


def or_function(n: int = 2) -> BooleanFunction:
    check_arity(n)
    table = np.ones(1 << n, dtype=np.int64)
    table[0] = 0
    return BooleanFunction(n, 1, table)


def implies_function() -> BooleanFunction:
    return BooleanFunction(2, 1, np.array([1, 0, 1, 1]))


def xor_function() -> BooleanFunction:
    return BooleanFunction(2, 1, np.array([0, 1, 1, 0]))


# ---------------------------------------------------------------------------
# Combinators
# ---------------------------------------------------------------------------


def compose(g: BooleanFunction, f: BooleanFunction) -> BooleanFunction:
    """g after f; the table of g indexed by the table of f."""
    if f.arity_out != g.arity_in:
        raise ArityMismatch(
            f"cannot compose: inner output arity {f.arity_out} != "
            f"outer input arity {g.arity_in}"
        )
    return BooleanFunction(f.arity_in, g.arity_out, g.table[f.table])


def product(f: BooleanFunction, g: BooleanFunction) -> BooleanFunction:
    """Blockwise product f x g acting on the first f.arity_in coordinates
    with f and the remaining g.arity_in with g."""
    n = f.arity_in + g.arity_in
    m = f.arity_out + g.arity_out
    if n > N_MAX or m > N_MAX:
        raise ArityTooLarge(f"product arity {n}->{m} exceeds N_MAX={N_MAX}")
    idx = np.arange(1 << n, dtype=np.int64)
    low = idx & ((1 << f.arity_in) - 1)
    high = idx >> f.arity_in
    table = f.table[low] | (g.table[high] << f.arity_out)
    return BooleanFunction(n, m, table)


def to_minterms(f: BooleanFunction) -> set[tuple[bool, ...]]:
    """The assignments a single-output function maps to true."""
    if f.arity_out != 1:
        raise MultiOutput(
            f"minterm expansion requires a single output, got {f.arity_out}"
        )
    return {
        index_assignment(int(a), f.arity_in) for a in np.flatnonzero(f.table)
    }


def from_minterms(arity: int, minterms) -> BooleanFunction:
    """Rebuild the single-output function that is true exactly on `minterms`."""
    check_arity(arity)
    table = np.zeros(1 << arity, dtype=np.int64)
    for assignment in minterms:
        if len(assignment) != arity:
            raise ArityMismatch(
                f"minterm {assignment!r} does not have {arity} coordinates"
            )
        table[assignment_index(assignment)] = 1
    return BooleanFunction(arity, 1, table)


# ---------------------------------------------------------------------------
# Formula AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    universe: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    universe: str
    body: "Formula"


Formula = Union[Var, Not, And, Or, Implies, Exists, Forall]

_QUANTIFIERS = (Exists, Forall)
_BINARY = {And: np.logical_and, Or: np.logical_or}


def formula_variables(ast: Formula) -> list[str]:
    """Variable names in first-appearance order (quantifier-free trees)."""
    seen: list[str] = []

    def walk(node):
        if isinstance(node, Var):
            if node.name not in seen:
                seen.append(node.name)
        elif isinstance(node, Not):
            walk(node.child)
        elif isinstance(node, (And, Or, Implies)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, _QUANTIFIERS):
            walk(node.body)
        else:
            raise TypeError(f"not a formula node: {node!r}")

    walk(ast)
    return seen


def compile_formula(ast: Formula, ordering: Sequence[str]) -> BooleanFunction:
    """Compile a quantifier-free formula into its truth table.

    `ordering` assigns variable i+1 (bit i) to ordering[i]; it may contain
    variables the formula never mentions.  Every variable in the formula
    must appear in the ordering.
    """
    names = list(ordering)
    if len(set(names)) != len(names):
        dupes = sorted({n for n in names if names.count(n) > 1})
        raise DuplicateVariable(f"duplicate variables in ordering: {dupes}")
    n = check_arity(len(names), "ordering length")
    idx = np.arange(1 << n, dtype=np.int64)
    columns = {
        name: ((idx >> bit) & 1).astype(bool) for bit, name in enumerate(names)
    }

    def eval_node(node) -> np.ndarray:
        if isinstance(node, Var):
            try:
                return columns[node.name]
            except KeyError:
                raise UnboundVariable(
                    f"variable {node.name!r} not bound by the ordering"
                ) from None
        if isinstance(node, Not):
            return np.logical_not(eval_node(node.child))
        if isinstance(node, Implies):
            return np.logical_or(
                np.logical_not(eval_node(node.left)), eval_node(node.right)
            )
        if isinstance(node, (And, Or)):
            return _BINARY[type(node)](eval_node(node.left), eval_node(node.right))
        if isinstance(node, _QUANTIFIERS):
            raise ValueError(
                "quantifiers must be expanded over their universes before "
                "compilation"
            )
        raise TypeError(f"not a formula node: {node!r}")

    return BooleanFunction(n, 1, eval_node(ast).astype(np.int64))
