"""Boolean formula AST.

Leaves are ``Var`` nodes wrapping an arbitrary hashable payload.  The
encoder uses three payload types: a bare predicate (current value), a
``Primed`` predicate (value after an operator) and an ``IndexedVariable``
(value after a numbered step).  Nothing in this module cares which.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Mapping


class Formula:
    __slots__ = ()

    def __and__(self, other: Formula) -> Formula:
        return conj(self, other)

    def __or__(self, other: Formula) -> Formula:
        return disj(self, other)

    def __invert__(self) -> Formula:
        return neg(self)


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Var(Formula):
    key: Hashable


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Iff(Formula):
    lhs: Formula
    rhs: Formula


TRUE = Const(True)
FALSE = Const(False)


# ---------------------------------------------------------------------------
# Smart constructors (flatten and fold constants)
# ---------------------------------------------------------------------------

def conj(*args: Formula | Iterable[Formula]) -> Formula:
    out: list[Formula] = []
    for a in _flatten_args(args):
        if isinstance(a, Const):
            if not a.value:
                return FALSE
            continue
        if isinstance(a, And):
            out.extend(a.args)
        else:
            out.append(a)
    if not out:
        return TRUE
    if len(out) == 1:
        return out[0]
    return And(tuple(out))


def disj(*args: Formula | Iterable[Formula]) -> Formula:
    out: list[Formula] = []
    for a in _flatten_args(args):
        if isinstance(a, Const):
            if a.value:
                return TRUE
            continue
        if isinstance(a, Or):
            out.extend(a.args)
        else:
            out.append(a)
    if not out:
        return FALSE
    if len(out) == 1:
        return out[0]
    return Or(tuple(out))


def neg(f: Formula) -> Formula:
    if isinstance(f, Const):
        return Const(not f.value)
    if isinstance(f, Not):
        return f.arg
    return Not(f)


def implies(lhs: Formula, rhs: Formula) -> Formula:
    if isinstance(lhs, Const):
        return rhs if lhs.value else TRUE
    if isinstance(rhs, Const):
        return TRUE if rhs.value else neg(lhs)
    return Implies(lhs, rhs)


def iff(lhs: Formula, rhs: Formula) -> Formula:
    if isinstance(lhs, Const):
        return rhs if lhs.value else neg(rhs)
    if isinstance(rhs, Const):
        return lhs if rhs.value else neg(lhs)
    if lhs == rhs:
        return TRUE
    return Iff(lhs, rhs)


def _flatten_args(args) -> Iterator[Formula]:
    for a in args:
        if isinstance(a, Formula):
            yield a
        else:
            yield from a


# ---------------------------------------------------------------------------
# Traversal
# ---------------------------------------------------------------------------

def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, (Implies, Iff)):
        return (f.lhs, f.rhs)
    return ()


def variables(f: Formula) -> set:
    seen: set = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            seen.add(node.key)
        else:
            stack.extend(children(node))
    return seen


def conjuncts(f: Formula) -> list[Formula]:
    """Top-level conjuncts of ``f`` with nested ``And`` nodes flattened."""
    if isinstance(f, And):
        out = []
        for a in f.args:
            out.extend(conjuncts(a))
        return out
    if f == TRUE:
        return []
    return [f]


def map_vars(f: Formula, fn: Callable[[Hashable], Formula]) -> Formula:
    """Replace every leaf ``Var(k)`` by ``fn(k)``; the tree shape is kept."""
    if isinstance(f, Var):
        return fn(f.key)
    if isinstance(f, Const):
        return f
    if isinstance(f, Not):
        return Not(map_vars(f.arg, fn))
    if isinstance(f, And):
        return And(tuple(map_vars(a, fn) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(map_vars(a, fn) for a in f.args))
    if isinstance(f, Implies):
        return Implies(map_vars(f.lhs, fn), map_vars(f.rhs, fn))
    if isinstance(f, Iff):
        return Iff(map_vars(f.lhs, fn), map_vars(f.rhs, fn))
    raise TypeError(f"not a formula: {f!r}")


def connective_count(f: Formula) -> dict[str, int]:
    counts: dict[str, int] = {}
    stack = [f]
    while stack:
        node = stack.pop()
        name = type(node).__name__
        counts[name] = counts.get(name, 0) + 1
        stack.extend(children(node))
    return counts


def evaluate(f: Formula, env: Mapping[Hashable, bool]) -> bool:
    if isinstance(f, Var):
        return bool(env[f.key])
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not evaluate(f.arg, env)
    if isinstance(f, And):
        return all(evaluate(a, env) for a in f.args)
    if isinstance(f, Or):
        return any(evaluate(a, env) for a in f.args)
    if isinstance(f, Implies):
        return (not evaluate(f.lhs, env)) or evaluate(f.rhs, env)
    if isinstance(f, Iff):
        return evaluate(f.lhs, env) == evaluate(f.rhs, env)
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5}


def to_text(f: Formula, name: Callable[[Hashable], str] = str) -> str:
    """Infix rendering using the catalog grammar (``! & | -> <->``)."""

    def go(node: Formula, outer: int) -> str:
        if isinstance(node, Var):
            return name(node.key)
        if isinstance(node, Const):
            return "true" if node.value else "false"
        prec = _PREC[type(node)]
        if isinstance(node, Not):
            s = "!" + go(node.arg, prec)
        elif isinstance(node, And):
            s = " & ".join(go(a, prec) for a in node.args)
        elif isinstance(node, Or):
            s = " | ".join(go(a, prec) for a in node.args)
        elif isinstance(node, Implies):
            # right associative
            s = f"{go(node.lhs, prec + 1)} -> {go(node.rhs, prec)}"
        else:
            s = f"{go(node.lhs, prec + 1)} <-> {go(node.rhs, prec + 1)}"
        return f"({s})" if prec <= outer else s

    return go(f, 0)


def to_smt(f: Formula, name: Callable[[Hashable], str] = str) -> str:
    """S-expression rendering, for debug dumps."""
    if isinstance(f, Var):
        return name(f.key)
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        return f"(not {to_smt(f.arg, name)})"
    if isinstance(f, (And, Or)):
        op = "and" if isinstance(f, And) else "or"
        return f"({op} " + " ".join(to_smt(a, name) for a in f.args) + ")"
    op = "=>" if isinstance(f, Implies) else "="
    return f"({op} {to_smt(f.lhs, name)} {to_smt(f.rhs, name)})"
