"""Abstract syntax, parser and truth-value evaluator for BL formulas.

Concrete syntax, loosest binding first::

    forall i in D: body      exists i in D: body     (scope to end of input)
    a -> b    a <-> b                                 (right associative)
    a & b     a ^ b                                   (left associative)
    !a        ~a                                      (strong / weak negation)
    true  false  Name  Name[i]  ( ... )

``&`` is strong conjunction (the t-norm), ``^`` is idempotent conjunction
(minimum). Disjunction is deliberately absent.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path
from typing import Mapping, Sequence, Union

import numpy as np

from fuzzbl.logic import Logic, residuum, strong_neg, tnorm, truth, weak_neg


class ExprError(Exception):
    """Base class for formula problems."""


class ParseError(ExprError):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        where = f"line {line}, column {column}"
        if self.expected:
            message = f"{message}; expected one of: {', '.join(self.expected)}"
        super().__init__(f"{where}: {message}")


class UnboundVariableError(ParseError):
    pass


class ValuationError(ExprError):
    """The valuation cannot supply what the formula needs."""


class UnboundPredicateError(ValuationError):
    pass


class UnknownDomainError(ValuationError):
    pass


class EmptyDomainError(ValuationError):
    pass


# --------------------------------------------------------------------- AST


@dataclass(frozen=True)
class Const:
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Pred:
    name: str
    index: str | None = None


@dataclass(frozen=True)
class StrongNeg:
    child: "Expr"


@dataclass(frozen=True)
class WeakNeg:
    child: "Expr"


@dataclass(frozen=True)
class StrongConj:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class WeakConj:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Implies:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Iff:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class ForAll:
    var: str
    domain: str
    body: "Expr"


@dataclass(frozen=True)
class Exists:
    var: str
    domain: str
    body: "Expr"


Expr = Union[Const, Pred, StrongNeg, WeakNeg, StrongConj, WeakConj, Implies, Iff, ForAll, Exists]


def conj_all(items: Sequence[Expr], strong: bool = True) -> Expr:
    """Left fold of ``&`` (or ``^``) over a non-empty sequence."""
    if not items:
        raise ValueError("cannot conjoin an empty sequence")
    node = StrongConj if strong else WeakConj
    return reduce(node, items)


# ------------------------------------------------------------------- lexer

_KEYWORDS = {"true", "false", "forall", "exists", "in"}
_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><->|->|[&^!~()\[\]:])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "op", "ident", "kw", "eof"
    text: str
    line: int
    column: int


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1)
        text = m.group()
        if m.lastgroup == "ws":
            for k, ch in enumerate(text):
                if ch == "\n":
                    line += 1
                    line_start = pos + k + 1
        else:
            kind = m.lastgroup
            if kind == "ident" and text in _KEYWORDS:
                kind = "kw"
            tokens.append(_Token(kind, text, line, pos - line_start + 1))
        pos = m.end()
    tokens.append(_Token("eof", "<end of input>", line, pos - line_start + 1))
    return tokens


# ------------------------------------------------------------------ parser

_ATOM_START = ("!", "~", "(", "true", "false", "identifier")


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.i = 0
        self.bound: list[str] = []

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def fail(self, expected, message=None):
        tok = self.tok
        if message is None:
            message = f"unexpected {tok.text!r}" if tok.kind != "eof" else "unexpected end of input"
        raise ParseError(message, tok.line, tok.column, expected)

    def accept(self, text):
        if self.tok.kind in ("op", "kw") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.fail([repr(text)])

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.fail(["identifier"])
        text = self.tok.text
        self.i += 1
        return text

    def parse(self) -> Expr:
        e = self.formula()
        if self.tok.kind != "eof":
            self.fail(["'->'", "'<->'", "'&'", "'^'", "<end of input>"])
        return e

    def at_quantifier(self) -> bool:
        return self.tok.kind == "kw" and self.tok.text in ("forall", "exists")

    def quantifier(self) -> Expr:
        # the body runs to the end of the enclosing expression
        quant = ForAll if self.tok.text == "forall" else Exists
        self.i += 1
        var = self.ident()
        self.expect("in")
        domain = self.ident()
        self.expect(":")
        self.bound.append(var)
        try:
            body = self.formula()
        finally:
            self.bound.pop()
        return quant(var, domain, body)

    def formula(self) -> Expr:
        if self.at_quantifier():
            return self.quantifier()
        left = self.conjunction()
        if self.accept("->"):
            return Implies(left, self.formula())
        if self.accept("<->"):
            return Iff(left, self.formula())
        return left

    def conjunction(self) -> Expr:
        e = self.unary()
        while True:
            if self.accept("&"):
                e = StrongConj(e, self.unary())
            elif self.accept("^"):
                e = WeakConj(e, self.unary())
            else:
                return e

    def unary(self) -> Expr:
        if self.accept("!"):
            return StrongNeg(self.unary())
        if self.accept("~"):
            return WeakNeg(self.unary())
        if self.at_quantifier():
            return self.quantifier()
        return self.atom()

    def atom(self) -> Expr:
        tok = self.tok
        if self.accept("true"):
            return TRUE
        if self.accept("false"):
            return FALSE
        if self.accept("("):
            e = self.formula()
            self.expect(")")
            return e
        if tok.kind == "ident":
            self.i += 1
            if self.accept("["):
                var_tok = self.tok
                var = self.ident()
                if var not in self.bound:
                    raise UnboundVariableError(
                        f"index variable {var!r} is not bound by a quantifier",
                        var_tok.line,
                        var_tok.column,
                    )
                self.expect("]")
                return Pred(tok.text, var)
            return Pred(tok.text)
        self.fail(["'!'", "'~'", "'('", "'true'", "'false'", "'forall'", "'exists'", "identifier"])


def parse(source: str) -> Expr:
    """Parse formula text into an :data:`Expr`.

    Raises :class:`ParseError` (with line, column and the expected-token set)
    on malformed input and :class:`UnboundVariableError` when an index
    variable is used outside any quantifier that binds it.
    """
    return _Parser(source).parse()


# ----------------------------------------------------------------- printer

_PREC = {Implies: 0, Iff: 0, StrongConj: 1, WeakConj: 1, StrongNeg: 2, WeakNeg: 2}


def to_source(expr: Expr) -> str:
    """Render with the minimal parentheses that parse back to ``expr``."""
    if isinstance(expr, Const):
        return "true" if expr.value else "false"
    if isinstance(expr, Pred):
        return expr.name if expr.index is None else f"{expr.name}[{expr.index}]"
    if isinstance(expr, (ForAll, Exists)):
        kw = "forall" if isinstance(expr, ForAll) else "exists"
        return f"{kw} {expr.var} in {expr.domain}: {to_source(expr.body)}"
    if isinstance(expr, (StrongNeg, WeakNeg)):
        op = "!" if isinstance(expr, StrongNeg) else "~"
        child = expr.child
        inner = to_source(child)
        if isinstance(child, (StrongConj, WeakConj, Implies, Iff, ForAll, Exists)):
            inner = f"({inner})"
        return op + inner
    if isinstance(expr, (StrongConj, WeakConj)):
        op = " & " if isinstance(expr, StrongConj) else " ^ "
        left, right = to_source(expr.left), to_source(expr.right)
        if isinstance(expr.left, (Implies, Iff, ForAll, Exists)):
            left = f"({left})"
        if isinstance(expr.right, (StrongConj, WeakConj, Implies, Iff, ForAll, Exists)):
            right = f"({right})"
        return left + op + right
    if isinstance(expr, (Implies, Iff)):
        op = " -> " if isinstance(expr, Implies) else " <-> "
        left, right = to_source(expr.left), to_source(expr.right)
        if isinstance(expr.left, (Implies, Iff, ForAll, Exists)):
            left = f"({left})"
        return left + op + right
    raise TypeError(f"not an expression: {expr!r}")


# --------------------------------------------------------------- analysis


def free_predicates(expr: Expr) -> frozenset[str]:
    """Names of all predicates and predicate families the formula reads."""
    if isinstance(expr, Const):
        return frozenset()
    if isinstance(expr, Pred):
        return frozenset([expr.name])
    if isinstance(expr, (StrongNeg, WeakNeg)):
        return free_predicates(expr.child)
    if isinstance(expr, (ForAll, Exists)):
        return free_predicates(expr.body)
    return free_predicates(expr.left) | free_predicates(expr.right)


def domains(expr: Expr) -> frozenset[str]:
    """Names of the quantifier domains the formula ranges over."""
    if isinstance(expr, (Const, Pred)):
        return frozenset()
    if isinstance(expr, (StrongNeg, WeakNeg)):
        return domains(expr.child)
    if isinstance(expr, (ForAll, Exists)):
        return frozenset([expr.domain]) | domains(expr.body)
    return domains(expr.left) | domains(expr.right)


# ------------------------------------------------------------- evaluation


@dataclass
class Valuation:
    """Truth values for the predicates of a formula.

    ``families`` hold one truth value per element of a finite domain and are
    read through indexed predicates such as ``Bias[i]``.
    """

    scalars: dict[str, object] = field(default_factory=dict)
    families: dict[str, Sequence[float]] = field(default_factory=dict)
    domains: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        for name, v in self.scalars.items():
            self.scalars[name] = truth(v, name)
        for name, vs in self.families.items():
            self.families[name] = [truth(v, f"{name}[{k}]") for k, v in enumerate(vs)]
        for name, size in self.domains.items():
            if int(size) != size or size < 0:
                raise ValuationError(f"domain {name!r} must have a non-negative integer size")
            self.domains[name] = int(size)

    @classmethod
    def from_dict(cls, data: Mapping) -> "Valuation":
        unknown = set(data) - {"scalars", "families", "domains"}
        if unknown:
            raise ValuationError(f"unknown valuation keys: {sorted(unknown)}")
        return cls(
            scalars=dict(data.get("scalars", {})),
            families={k: list(v) for k, v in data.get("families", {}).items()},
            domains=dict(data.get("domains", {})),
        )

    @classmethod
    def load(cls, path) -> "Valuation":
        with open(Path(path), encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValuationError(f"valuation file is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ValuationError("valuation file must hold a JSON object")
        return cls.from_dict(data)


def evaluate(expr: Expr, logic: Logic, valuation: Valuation | Mapping | None = None):
    """Truth value of ``expr`` under ``logic``.

    ``valuation`` may be a :class:`Valuation` or a plain mapping of scalar
    predicate names. Scalar truth values may also be numpy arrays, in which
    case the formula is evaluated elementwise.
    """
    logic = Logic.parse(logic)
    if valuation is None:
        valuation = Valuation()
    elif not isinstance(valuation, Valuation):
        valuation = Valuation(scalars=dict(valuation))
    return _eval(expr, logic, valuation, {})


def _eval(expr, logic, val: Valuation, env: dict):
    if isinstance(expr, Const):
        return 1.0 if expr.value else 0.0
    if isinstance(expr, Pred):
        return _lookup(expr, val, env)
    if isinstance(expr, StrongNeg):
        return strong_neg(logic, _eval(expr.child, logic, val, env))
    if isinstance(expr, WeakNeg):
        return weak_neg(_eval(expr.child, logic, val, env))
    if isinstance(expr, (ForAll, Exists)):
        if expr.domain not in val.domains:
            raise UnknownDomainError(f"unknown domain {expr.domain!r}")
        size = val.domains[expr.domain]
        if size == 0:
            raise EmptyDomainError(f"domain {expr.domain!r} is empty")
        values = []
        for k in range(size):
            inner = dict(env)
            inner[expr.var] = (expr.domain, k)
            v = _eval(expr.body, logic, val, inner)
            values.append(v if isinstance(expr, ForAll) else strong_neg(logic, v))
        lowest = reduce(np.minimum, values)
        lowest = float(lowest) if np.ndim(lowest) == 0 else lowest
        return lowest if isinstance(expr, ForAll) else strong_neg(logic, lowest)
    left = _eval(expr.left, logic, val, env)
    right = _eval(expr.right, logic, val, env)
    if isinstance(expr, StrongConj):
        return tnorm(logic, left, right)
    if isinstance(expr, WeakConj):
        r = np.minimum(left, right)
        return float(r) if np.ndim(r) == 0 else r
    if isinstance(expr, Implies):
        return residuum(logic, left, right)
    if isinstance(expr, Iff):
        return tnorm(logic, residuum(logic, left, right), residuum(logic, right, left))
    raise TypeError(f"not an expression: {expr!r}")


def _lookup(pred: Pred, val: Valuation, env: dict):
    if pred.index is None:
        if pred.name not in val.scalars:
            raise UnboundPredicateError(f"no truth value for predicate {pred.name!r}")
        return val.scalars[pred.name]
    if pred.index not in env:
        raise UnboundVariableError(f"index variable {pred.index!r} is not bound", 0, 0)
    domain, k = env[pred.index]
    if pred.name not in val.families:
        raise UnboundPredicateError(f"no truth values for predicate family {pred.name!r}")
    family = val.families[pred.name]
    if len(family) != val.domains[domain]:
        raise ValuationError(
            f"family {pred.name!r} has {len(family)} values but domain {domain!r} has size {val.domains[domain]}"
        )
    return family[k]
