from __future__ import annotations

from ..errors import UnknownSymbol
from ..logic import Const, Formula, Var, conj, disj, neg
from ..predicates import Context, contains, empty, eq
from .model import (CondAnd, CondConst, CondNot, CondOr, ConditionExpr, Contains, IsEmpty, ValueEq,
                    ValueNeq)


def lower_condition(expr: ConditionExpr, ctx: Context) -> Formula:
    """Translate a branch condition into an (unindexed) predicate formula."""
    if isinstance(expr, (ValueEq, ValueNeq)):
        _need(ctx, expr.left, expr.right)
        if ctx.sort_of(expr.left) != ctx.sort_of(expr.right):
            raise UnknownSymbol(f"cannot compare {expr.left!r} with {expr.right!r}: different sorts")
        atom = Const(True) if expr.left == expr.right else Var(eq(expr.left, expr.right))
        return atom if isinstance(expr, ValueEq) else neg(atom)
    if isinstance(expr, Contains):
        _need(ctx, expr.collection, expr.value)
        return Var(contains(expr.collection, expr.value))
    if isinstance(expr, IsEmpty):
        _need(ctx, expr.collection)
        return Var(empty(expr.collection))
    if isinstance(expr, CondConst):
        return Const(expr.value)
    if isinstance(expr, CondNot):
        return neg(lower_condition(expr.arg, ctx))
    if isinstance(expr, CondAnd):
        return conj(lower_condition(expr.left, ctx), lower_condition(expr.right, ctx))
    if isinstance(expr, CondOr):
        return disj(lower_condition(expr.left, ctx), lower_condition(expr.right, ctx))
    raise TypeError(f"not a condition: {expr!r}")


def _need(ctx: Context, *symbols: str) -> None:
    for s in symbols:
        if s not in ctx:
            raise UnknownSymbol(f"symbol {s!r} is not in the context {ctx}")
