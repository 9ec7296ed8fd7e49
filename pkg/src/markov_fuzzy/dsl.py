"""Text syntax for formulas and JSON syntax for model files.

Formula grammar (ASCII connectives, whitespace insignificant):

    formula := quant | implies
    quant   := ("exists" | "forall") IDENT "in" IDENT ":" formula
    implies := or ("->" implies)?
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "!" unary | "(" formula ")" | IDENT | IDENT "(" IDENT ")"
    IDENT   := [A-Za-z_][A-Za-z0-9_]*

Precedence: ! binds tightest, then &, then |, then ->; -> associates to
the right.  Inside quantifier bodies the application form P(x) names the
belief family P at the quantified point x.

Model files are JSON objects; see `parse_model` / `parse_joint`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Union

from .boolfuncs import And, Exists, Forall, Formula, Implies, Not, Or, Var
from .bounds import PartialJointSpec
from .errors import DuplicateVariable, ParseError, SchemaError
from .joints import JointBooleanDist, make_joint
from .quantifiers import BeliefTable

__all__ = [
    "SourceSpan",
    "parse_formula",
    "format_formula",
    "parse_model",
    "parse_joint",
]


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets (start, end) of a token in the input text."""

    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span ({self.start}, {self.end})")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    start: int
    end: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.start, self.end)


_KEYWORDS = ("exists", "forall", "in")
_TOKEN_RE = re.compile(
    r"(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<arrow>->)|(?P<sym>[&|!():])"
)


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    length = len(text)
    while pos < length:
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(
                f"unexpected character {text[pos]!r} at offset {pos}",
                span=SourceSpan(pos, pos + 1),
                expected=("identifier", "'!'", "'&'", "'|'", "'->'", "'('", "')'", "':'"),
            )
        if match.lastgroup == "ident":
            word = match.group()
            kind = word if word in _KEYWORDS else "ident"
        elif match.lastgroup == "arrow":
            kind = "->"
        else:
            kind = match.group()
        tokens.append(_Token(kind, match.group(), match.start(), match.end()))
        pos = match.end()
    tokens.append(_Token("eof", "", length, length))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.current
        self.pos += 1
        return token

    def fail(self, expected) -> ParseError:
        token = self.current
        shown = token.text or "end of input"
        return ParseError(
            f"unexpected {shown!r} at offset {token.start}; "
            f"expected one of: {', '.join(sorted(expected))}",
            span=token.span,
            expected=expected,
        )

    def expect(self, kind: str, label: str) -> _Token:
        if self.current.kind != kind:
            raise self.fail((label,))
        return self.advance()

    def formula(self) -> Formula:
        if self.current.kind in ("exists", "forall"):
            return self.quantified()
        return self.implies()

    def quantified(self) -> Formula:
        keyword = self.advance()
        var = self.expect("ident", "variable name").text
        self.expect("in", "'in'")
        universe = self.expect("ident", "universe name").text
        self.expect(":", "':'")
        body = self.formula()
        node = Exists if keyword.kind == "exists" else Forall
        return node(var, universe, body)

    def implies(self) -> Formula:
        left = self.or_level()
        if self.current.kind == "->":
            self.advance()
            return Implies(left, self.implies())
        return left

    def or_level(self) -> Formula:
        node = self.and_level()
        while self.current.kind == "|":
            self.advance()
            node = Or(node, self.and_level())
        return node

    def and_level(self) -> Formula:
        node = self.unary()
        while self.current.kind == "&":
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        token = self.current
        if token.kind == "!":
            self.advance()
            return Not(self.unary())
        if token.kind == "(":
            self.advance()
            inner = self.formula()
            self.expect(")", "')'")
            return inner
        if token.kind == "ident":
            self.advance()
            if self.current.kind == "(":
                self.advance()
                arg = self.expect("ident", "variable name").text
                self.expect(")", "')'")
                return Var(f"{token.text}({arg})")
            return Var(token.text)
        raise self.fail(("identifier", "'!'", "'('", "'exists'", "'forall'"))


_APPLICATION_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\(([A-Za-z_][A-Za-z0-9_]*)\)$")


def _check_quantified(node: Formula, bound: tuple = ()) -> None:
    """Reject duplicate nested quantifier variables and more than one
    belief family applied to the same quantified variable."""
    if isinstance(node, Var):
        return
    if isinstance(node, Not):
        _check_quantified(node.child, bound)
    elif isinstance(node, (And, Or, Implies)):
        _check_quantified(node.left, bound)
        _check_quantified(node.right, bound)
    elif isinstance(node, (Exists, Forall)):
        if node.var in bound:
            raise DuplicateVariable(
                f"quantified variable {node.var!r} shadows an enclosing binding"
            )
        families = set()

        def collect(inner):
            if isinstance(inner, Var):
                match = _APPLICATION_RE.match(inner.name)
                if match and match.group(2) == node.var:
                    families.add(match.group(1))
            elif isinstance(inner, Not):
                collect(inner.child)
            elif isinstance(inner, (And, Or, Implies)):
                collect(inner.left)
                collect(inner.right)
            elif isinstance(inner, (Exists, Forall)):
                collect(inner.body)

        collect(node.body)
        if len(families) > 1:
            raise ParseError(
                f"variable {node.var!r} is applied to multiple belief "
                f"families {sorted(families)}; one family per quantified "
                f"variable is supported"
            )
        _check_quantified(node.body, bound + (node.var,))


def parse_formula(text: str) -> Formula:
    """Parse formula text into an AST, or raise ParseError with a span."""
    parser = _Parser(text)
    node = parser.formula()
    if parser.current.kind != "eof":
        raise parser.fail(("end of input", "'&'", "'|'", "'->'"))
    _check_quantified(node)
    return node


# ---------------------------------------------------------------------------
# Pretty printer
# ---------------------------------------------------------------------------

_PREC_QUANT = 0
_PREC_IMPLIES = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_NOT = 4
_PREC_ATOM = 5


def _format(node: Formula, context: int) -> str:
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Not):
        text, prec = "!" + _format(node.child, _PREC_NOT), _PREC_NOT
    elif isinstance(node, And):
        text = f"{_format(node.left, _PREC_AND)} & {_format(node.right, _PREC_NOT)}"
        prec = _PREC_AND
    elif isinstance(node, Or):
        text = f"{_format(node.left, _PREC_OR)} | {_format(node.right, _PREC_AND)}"
        prec = _PREC_OR
    elif isinstance(node, Implies):
        text = (
            f"{_format(node.left, _PREC_OR)} -> {_format(node.right, _PREC_IMPLIES)}"
        )
        prec = _PREC_IMPLIES
    elif isinstance(node, (Exists, Forall)):
        keyword = "exists" if isinstance(node, Exists) else "forall"
        text = (
            f"{keyword} {node.var} in {node.universe} : "
            f"{_format(node.body, _PREC_QUANT)}"
        )
        prec = _PREC_QUANT
    else:
        raise TypeError(f"not a formula node: {node!r}")
    if prec < context:
        return f"({text})"
    return text


def format_formula(ast: Formula) -> str:
    """Minimal-parentheses text form; parse_formula(format_formula(a)) == a."""
    return _format(ast, _PREC_QUANT)


# ---------------------------------------------------------------------------
# Model files
# ---------------------------------------------------------------------------


def _load_object(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaError("model document must be a JSON object")
    return obj


def _check_keys(obj: dict, allowed: tuple, label: str) -> None:
    extra = set(obj) - set(allowed)
    if extra:
        raise SchemaError(f"unknown {label} keys: {sorted(extra)}")


def _split_pair_key(key: str):
    parts = key.split(",")
    if len(parts) != 2:
        raise SchemaError(f"pair key {key!r} must have the form 'a,b'")
    return parts[0], parts[1]


def parse_model(text: str) -> Union[PartialJointSpec, BeliefTable]:
    """Load a model document.

    {"marginals": [...], "pairwise": {"i,j": q}?, "independent": bool?}
    builds a PartialJointSpec (coordinates are 1-based);
    {"universe": [...], "p": {label: belief}, "q_pair": {"a,b": q}?}
    builds a BeliefTable.  All invariants (simplex, q feasibility) are
    checked at load time.
    """
    obj = _load_object(text)
    if "marginals" in obj:
        _check_keys(obj, ("marginals", "pairwise", "independent"), "spec")
        marginals = obj["marginals"]
        if not isinstance(marginals, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in marginals
        ):
            raise SchemaError("'marginals' must be a list of numbers")
        pairwise = {}
        for key, value in (obj.get("pairwise") or {}).items():
            a, b = _split_pair_key(key)
            try:
                pair = (int(a), int(b))
            except ValueError:
                raise SchemaError(
                    f"pair key {key!r} must name 1-based coordinates"
                ) from None
            pairwise[pair] = value
        independent = obj.get("independent", False)
        if not isinstance(independent, bool):
            raise SchemaError("'independent' must be a boolean")
        return PartialJointSpec(
            marginals=tuple(marginals), pairwise=pairwise, independent=independent
        )
    if "universe" in obj:
        _check_keys(obj, ("universe", "p", "q_pair"), "belief table")
        universe = obj["universe"]
        if not isinstance(universe, list) or not all(
            isinstance(x, str) for x in universe
        ):
            raise SchemaError("'universe' must be a list of strings")
        if any("," in x for x in universe):
            raise SchemaError("universe labels must not contain ','")
        p = obj.get("p")
        if not isinstance(p, dict):
            raise SchemaError("'p' must map labels to beliefs")
        q_pair = {}
        for key, value in (obj.get("q_pair") or {}).items():
            q_pair[_split_pair_key(key)] = value
        return BeliefTable(universe=tuple(universe), p=p, q_pair=q_pair)
    raise SchemaError(
        "model document must contain either 'marginals' or 'universe'"
    )


def parse_joint(text: str) -> JointBooleanDist:
    """Load {"arity": n, "probs": [... 2**n floats ...]} into a joint table."""
    obj = _load_object(text)
    _check_keys(obj, ("arity", "probs"), "joint")
    if "arity" not in obj or "probs" not in obj:
        raise SchemaError("joint document needs 'arity' and 'probs'")
    arity = obj["arity"]
    if not isinstance(arity, int) or isinstance(arity, bool):
        raise SchemaError("'arity' must be an integer")
    probs = obj["probs"]
    if not isinstance(probs, list):
        raise SchemaError("'probs' must be a list of numbers")
    return make_joint(arity, probs)
