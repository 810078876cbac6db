"""Contexts, the predicate universe, axioms and step indexing.

A context fixes which collection and value symbols an extraction talks
about.  Every predicate over those symbols becomes one Boolean variable per
program step.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConfigError, UnknownSymbol
from .logic import (TRUE, And, Const, Formula, Iff, Implies, Not, Or, Var, conj, iff, map_vars,
                    to_text, variables)

EQ, CONTAINS, EMPTY, EXC = "eq", "contains", "empty", "exc"
_KIND_RANK = {EQ: 0, CONTAINS: 1, EMPTY: 2, EXC: 3}


@dataclass(frozen=True)
class Predicate:
    kind: str
    args: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown predicate kind {self.kind!r}")
        if self.kind == EQ and (len(self.args) != 2 or self.args[0] >= self.args[1]):
            raise ValueError("eq predicates take two distinct symbols in canonical order; use eq()")

    @property
    def sort_key(self):
        return (_KIND_RANK[self.kind], self.args)

    def __lt__(self, other: Predicate) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if self.kind == EXC:
            return EXC
        return f"{self.kind}({','.join(self.args)})"

    def __repr__(self) -> str:
        return str(self)

    def rename(self, mapping) -> Predicate | bool:
        """Substitute symbols; ``eq(x, x)`` collapses to ``True``."""
        args = tuple(mapping.get(a, a) for a in self.args)
        if self.kind == EQ:
            if args[0] == args[1]:
                return True
            return eq(*args)
        return Predicate(self.kind, args)


def eq(a: str, b: str) -> Predicate:
    if a == b:
        raise ValueError(f"eq({a},{a}) is not a predicate")
    return Predicate(EQ, (a, b) if a < b else (b, a))


def contains(c: str, v: str) -> Predicate:
    return Predicate(CONTAINS, (c, v))


def empty(c: str) -> Predicate:
    return Predicate(EMPTY, (c,))


EXC_PRED = Predicate(EXC)


@dataclass(frozen=True)
class Primed:
    """The post-operator copy ``p'`` of a predicate."""
    pred: Predicate

    def __str__(self) -> str:
        return f"{self.pred}'"


@dataclass(frozen=True)
class IndexedVariable:
    pred: Predicate
    step: int

    def __str__(self) -> str:
        return f"{self.pred}@{self.step}"

    def __lt__(self, other: IndexedVariable) -> bool:
        return (self.step, self.pred.sort_key) < (other.step, other.pred.sort_key)


def at(pred: Predicate, step: int) -> Var:
    return Var(IndexedVariable(pred, step))


# ---------------------------------------------------------------------------
# Contexts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Context:
    collections: frozenset[str]
    values: frozenset[str]
    indeterminate: frozenset[str] = frozenset()

    def __post_init__(self):
        clash = self.collections & self.values
        if clash:
            raise ValueError(f"symbols used as both collection and value: {sorted(clash)}")
        stray = self.indeterminate - self.collections - self.values
        if stray:
            raise ValueError(f"indeterminate symbols not in context: {sorted(stray)}")

    @classmethod
    def of(cls, collections: Iterable[str] = (), values: Iterable[str] = (),
           indeterminate: Iterable[str] = ()) -> Context:
        return cls(frozenset(collections), frozenset(values), frozenset(indeterminate))

    def union(self, other: Context) -> Context:
        return Context(self.collections | other.collections, self.values | other.values,
                       self.indeterminate | other.indeterminate)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.collections or symbol in self.values

    def is_state_symbol(self, symbol: str) -> bool:
        return symbol not in self.indeterminate

    def is_state(self, pred: Predicate) -> bool:
        return all(self.is_state_symbol(a) for a in pred.args)

    def sort_of(self, symbol: str) -> str:
        if symbol in self.collections:
            return "collection"
        if symbol in self.values:
            return "value"
        raise UnknownSymbol(f"symbol {symbol!r} is not in the context")

    def __str__(self) -> str:
        def fmt(names):
            return "{" + ", ".join(n + ("?" if n in self.indeterminate else "") for n in sorted(names)) + "}"
        return f"({fmt(self.collections)}, {fmt(self.values)})"


def predicate_universe(ctx: Context, include_exc: bool = False) -> tuple[Predicate, ...]:
    """Every predicate over ``ctx``, in canonical order."""
    colls = sorted(ctx.collections)
    vals = sorted(ctx.values)
    out = [eq(a, b) for a, b in itertools.combinations(vals, 2)]
    out += [eq(a, b) for a, b in itertools.combinations(colls, 2)]
    out += [contains(c, v) for c in colls for v in vals]
    out += [empty(c) for c in colls]
    if include_exc:
        out.append(EXC_PRED)
    return tuple(sorted(out))


def split_predicates(ctx: Context, preds: Iterable[Predicate]):
    """Partition into (state, indeterminacy) predicates."""
    st, nd = [], []
    for p in preds:
        (st if ctx.is_state(p) else nd).append(p)
    return tuple(st), tuple(nd)


def instantiate_axioms(ctx: Context, preds: Iterable[Predicate] | None = None) -> Formula:
    """Conjunction of the same-value, same-collection and emptiness axioms."""
    colls = sorted(ctx.collections)
    vals = sorted(ctx.values)
    parts: list[Formula] = []
    for c in colls:
        for v1, v2 in itertools.combinations(vals, 2):
            parts.append(Implies(Var(eq(v1, v2)), Iff(Var(contains(c, v1)), Var(contains(c, v2)))))
    for c1, c2 in itertools.combinations(colls, 2):
        for v in vals:
            parts.append(Implies(Var(eq(c1, c2)), Iff(Var(contains(c1, v)), Var(contains(c2, v)))))
    for c in colls:
        for v in vals:
            parts.append(Implies(Var(empty(c)), Not(Var(contains(c, v)))))
    if preds is not None:
        universe = set(preds)
        missing = {k for part in parts for k in variables(part)} - universe
        if missing:
            raise ValueError(f"axioms mention predicates outside the universe: {sorted(missing)}")
    if not parts:
        return TRUE
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def index_formula(phi: Formula, i: int, j: int | None = None) -> Formula:
    """Replace ``p`` by ``p@i`` and ``p'`` by ``p@j``; structure is kept."""

    def sub(key):
        if isinstance(key, Predicate):
            return Var(IndexedVariable(key, i))
        if isinstance(key, Primed):
            if j is None:
                raise ValueError(f"primed predicate {key} in a single-index formula")
            return Var(IndexedVariable(key.pred, j))
        raise TypeError(f"cannot index variable {key!r}")

    return map_vars(phi, sub)


def frame(preds: Iterable[Predicate], src: int, dst: int) -> Formula:
    return conj(iff(at(p, dst), at(p, src)) for p in preds)


# ---------------------------------------------------------------------------
# Building contexts from source
# ---------------------------------------------------------------------------

def common_context(unit, forced_constants: Iterable[str] = ()) -> Context:
    """Fields, literal constants of the whole unit and catalog-forced
    constants; all of them state symbols."""
    return Context.of(collections=(f for f, _ in unit.fields),
                      values=[*unit.literals(), *forced_constants])


def build_context(unit, meth, selection: str | Sequence[str] | None = "auto",
                  forced_constants: Iterable[str] = ()) -> Context:
    """Context of ``meth``: the common context united with its parameters.

    With an explicit ``selection`` only the listed symbols are added on top of
    the ones the body references (and the forced constants).
    """
    from .source.model import is_literal, statement_symbols

    fields = [f for f, _ in unit.fields]
    params = list(meth.parameters)
    forced = list(forced_constants)
    if selection is None or selection == "auto":
        base = common_context(unit, forced)
        return base.union(Context.of(values=params, indeterminate=params))

    known = set(fields) | set(params) | set(unit.literals()) | set(forced)
    unknown = [s for s in selection if s not in known]
    if unknown:
        raise ConfigError(f"unknown context symbol(s) for method {meth.name!r}: {', '.join(unknown)}")
    wanted = set(selection) | set(statement_symbols(meth.body)) | set(forced)
    colls = [f for f in fields if f in wanted]
    vals = [s for s in wanted if s not in fields]
    nd = [p for p in params if p in wanted]
    for s in vals:
        if not (is_literal(s) or s in params or s in forced):
            raise ConfigError(f"symbol {s!r} is neither a parameter nor a constant")
    return Context.of(colls, vals, nd)


# ---------------------------------------------------------------------------
# Text syntax: predicates and formulas
#
#   formula := iff ; iff := imp ('<->' imp)* ; imp := or ('->' imp)?
#   or := and ('|' and)* ; and := unary ('&' unary)*
#   unary := '!' unary | atom "'"? | '(' formula ')' | 'true' | 'false'
#   atom := 'eq(' s ',' s ')' | 'contains(' s ',' s ')' | 'empty(' s ')' | 'exc'
# ---------------------------------------------------------------------------

_SYMBOL = r'(?:"(?:[^"\\]|\\.)*"|[A-Za-z_$][A-Za-z_$0-9]*|-?\d+(?:\.\d+)?)'
_FORMULA_TOKEN = re.compile(
    rf"\s*(?:(?P<op><->|->|[&|!()',])|(?P<word>{_SYMBOL}))"
)


def parse_predicate(text: str) -> Predicate:
    f = parse_formula(text)
    if isinstance(f, Var) and isinstance(f.key, Predicate):
        return f.key
    raise ValueError(f"not a predicate: {text!r}")


def parse_formula(text: str) -> Formula:
    """Parse the catalog formula syntax into a formula over predicates and
    primed predicates."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _FORMULA_TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"bad formula syntax at {pos}: {text!r}")
        tokens.append(m.group("op") or m.group("word"))
        pos = m.end()
    tokens.append(None)
    k = 0

    def peek():
        return tokens[k]

    def take(expected=None):
        nonlocal k
        tok = tokens[k]
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r}, got {tok!r} in {text!r}")
        k += 1
        return tok

    def p_iff():
        left = p_imp()
        while peek() == "<->":
            take()
            left = Iff(left, p_imp())
        return left

    def p_imp():
        left = p_or()
        if peek() == "->":
            take()
            return Implies(left, p_imp())
        return left

    def p_or():
        args = [p_and()]
        while peek() == "|":
            take()
            args.append(p_and())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def p_and():
        args = [p_unary()]
        while peek() == "&":
            take()
            args.append(p_unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def p_unary():
        tok = peek()
        if tok == "!":
            take()
            return Not(p_unary())
        if tok == "(":
            take()
            inner = p_iff()
            take(")")
            return inner
        if tok in ("true", "false"):
            take()
            return Const(tok == "true")
        return p_atom()

    def p_atom():
        name = take()
        if name == EXC:
            result = EXC_PRED
        elif name in (EQ, CONTAINS, EMPTY):
            take("(")
            args = [take()]
            while peek() == ",":
                take()
                args.append(take())
            take(")")
            if name == EQ:
                if len(args) != 2:
                    raise ValueError(f"eq takes two arguments in {text!r}")
                result = eq(*args) if args[0] != args[1] else True
            elif name == CONTAINS:
                if len(args) != 2:
                    raise ValueError(f"contains takes two arguments in {text!r}")
                result = contains(*args)
            else:
                if len(args) != 1:
                    raise ValueError(f"empty takes one argument in {text!r}")
                result = empty(args[0])
        else:
            raise ValueError(f"unexpected token {name!r} in {text!r}")
        primed = False
        if peek() == "'":
            take()
            primed = True
        if result is True:
            return Const(True)
        return Var(Primed(result) if primed else result)

    out = p_iff()
    if peek() is not None:
        raise ValueError(f"trailing input {peek()!r} in {text!r}")
    return out


def formula_text(f: Formula) -> str:
    return to_text(f)


__all__ = [
    "Predicate", "Primed", "IndexedVariable", "Context", "eq", "contains", "empty", "EXC_PRED",
    "predicate_universe", "split_predicates", "instantiate_axioms", "index_formula", "frame",
    "build_context", "common_context", "parse_predicate", "parse_formula", "formula_text", "at",
]
