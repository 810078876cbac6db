"""Step-indexed Boolean encoding of method bodies.

A body with operators numbered ``1..n`` is encoded over variables ``p@i``
(value of predicate ``p`` after operator ``i``; ``i = 0`` is method entry).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .logic import TRUE, Formula, conj, iff, implies, neg
from .predicates import Context, Predicate, at, index_formula, instantiate_axioms
from .semantics import DEFAULT_CATALOG, Catalog, expand
from .source.conditions import lower_condition
from .source.model import Block, IfElse, MethodModel, PlainOp, While, last_index


@dataclass
class Encoder:
    ctx: Context
    predicates: Sequence[Predicate]
    field_kinds: Mapping[str, str]
    catalog: Catalog = DEFAULT_CATALOG
    axioms: Formula = field(init=False)
    #: step j -> predicates an operator ending at j may touch (for diagnostics/tests)
    touched: dict[int, frozenset[Predicate]] = field(init=False, default_factory=dict)
    #: steps at which the axioms are asserted
    axiom_steps: set[int] = field(init=False, default_factory=set)

    def __post_init__(self):
        self.predicates = tuple(self.predicates)
        self.axioms = instantiate_axioms(self.ctx, self.predicates)

    def axioms_at(self, step: int) -> Formula:
        self.axiom_steps.add(step)
        return index_formula(self.axioms, step)

    def operator(self, op: PlainOp, i: int, j: int) -> Formula:
        sem = self.catalog.lookup(op.operation, self.field_kinds[op.receiver])
        phi, touched = expand(sem, op, self.ctx, self.predicates)
        self.touched[j] = touched
        return conj(index_formula(phi, i, j), self.axioms_at(j))

    def statement(self, s, i: int, j: int) -> Formula:
        if isinstance(s, Block):
            if not s.children:
                if i != j:
                    raise ValueError(f"empty block spans steps {i}..{j}")
                return TRUE
            head, rest = s.children[0], Block(s.children[1:])
            mid = last_index(head, i)
            return conj(self.statement(head, i, mid), self.statement(rest, mid, j))
        if isinstance(s, PlainOp):
            return self.operator(s, i, j)
        if isinstance(s, While):
            # the loop body is havocked: only the exit condition is known
            cnd = lower_condition(s.condition, self.ctx)
            return conj(neg(index_formula(cnd, j)), self.axioms_at(j))
        if isinstance(s, IfElse):
            cnd = index_formula(lower_condition(s.condition, self.ctx), i)
            l1 = last_index(s.then, i)
            l2 = last_index(s.orelse, i)
            return conj(
                self.statement(s.then, i, l1),
                self.statement(s.orelse, i, l2),
                implies(cnd, self.copy(l1, j)),
                implies(neg(cnd), self.copy(l2, j)),
            )
        raise TypeError(f"not a statement: {s!r}")

    def copy(self, src: int, dst: int) -> Formula:
        return conj(iff(at(p, dst), at(p, src)) for p in self.predicates)

    def method(self, meth: MethodModel) -> tuple[Formula, int]:
        last = meth.last
        return conj(self.axioms_at(0), self.statement(meth.body, 0, last)), last


def encode_statement(s, i: int, j: int, ctx: Context, preds: Sequence[Predicate],
                     field_kinds: Mapping[str, str], catalog: Catalog = DEFAULT_CATALOG) -> Formula:
    return Encoder(ctx, preds, field_kinds, catalog).statement(s, i, j)


def encode_method(meth: MethodModel, ctx: Context, preds: Sequence[Predicate],
                  field_kinds: Mapping[str, str], catalog: Catalog = DEFAULT_CATALOG) -> tuple[Formula, int]:
    """``axioms@0 & [[body]]^{0,last}`` and ``last``."""
    return Encoder(ctx, preds, field_kinds, catalog).method(meth)
