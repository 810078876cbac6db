"""Transition guards: DNFs over the indeterminacy predicates at method entry."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .logic import FALSE, TRUE, Const, Formula, Not, Or, Var, conj, conjuncts, disj, evaluate
from .predicates import CONTAINS, EQ, Predicate

Row = tuple[bool, ...]


@dataclass(frozen=True)
class Guard:
    """Each row is a total valuation of ``predicates``; the guard is their
    disjunction.  ``care`` optionally lists the rows that are admissible in
    the source state at all (used only for presentation)."""
    predicates: tuple[Predicate, ...]
    rows: tuple[Row, ...]
    care: frozenset[Row] | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.predicates)
        if any(len(r) != n for r in self.rows):
            raise ValueError("guard rows must assign every predicate")
        object.__setattr__(self, "rows", tuple(sorted(set(map(tuple, self.rows)), reverse=True)))

    @classmethod
    def false(cls, predicates: Iterable[Predicate] = ()) -> Guard:
        return cls(tuple(predicates), ())

    @classmethod
    def true(cls, predicates: Iterable[Predicate] = ()) -> Guard:
        preds = tuple(predicates)
        return cls(preds, tuple(itertools.product((True, False), repeat=len(preds))))

    @classmethod
    def from_assignments(cls, predicates: Iterable[Predicate], assignments: Iterable[Mapping],
                         care: Iterable[Mapping] | None = None) -> Guard:
        preds = tuple(predicates)
        rows = tuple(tuple(bool(a[p]) for p in preds) for a in assignments)
        care_rows = None if care is None else frozenset(tuple(bool(a[p]) for p in preds) for a in care)
        return cls(preds, rows, care_rows)

    @property
    def is_false(self) -> bool:
        return not self.rows

    def conjuncts(self) -> list[dict[Predicate, bool]]:
        return [dict(zip(self.predicates, r)) for r in self.rows]

    def holds(self, valuation: Mapping[Predicate, bool]) -> bool:
        return tuple(bool(valuation[p]) for p in self.predicates) in set(self.rows)

    def is_valid(self) -> bool:
        return len(self.rows) == 2 ** len(self.predicates)

    def is_unconditional(self) -> bool:
        """True when the guard admits every row the source state allows."""
        if self.care is None:
            return self.is_valid()
        return bool(self.rows) and self.care <= set(self.rows)

    def equivalent(self, other: Guard) -> bool:
        union = sorted(set(self.predicates) | set(other.predicates))
        mine, theirs = set(self.rows), set(other.rows)
        for bits in itertools.product((False, True), repeat=len(union)):
            val = dict(zip(union, bits))
            a = tuple(val[p] for p in self.predicates) in mine
            b = tuple(val[p] for p in other.predicates) in theirs
            if a != b:
                return False
        return True

    def to_formula(self) -> Formula:
        return disj(conj(Var(p) if v else Not(Var(p)) for p, v in zip(self.predicates, r))
                    for r in self.rows)


# ---------------------------------------------------------------------------
# Two-level minimisation (Quine-McCluskey)
# ---------------------------------------------------------------------------

def _row_int(row: Row) -> int:
    out = 0
    for b in row:
        out = (out << 1) | int(b)
    return out


def _primes(terms: set[int], n: int) -> set[tuple[int, int]]:
    """Prime implicants as (value, dash-mask) pairs."""
    current = {(t, 0) for t in terms}
    primes: set[tuple[int, int]] = set()
    while current:
        merged: set[tuple[int, int]] = set()
        used: set[tuple[int, int]] = set()
        ordered = sorted(current)
        for (v1, m1), (v2, m2) in itertools.combinations(ordered, 2):
            if m1 != m2:
                continue
            diff = v1 ^ v2
            if diff and diff & (diff - 1) == 0:
                merged.add((v1 & ~diff, m1 | diff))
                used.add((v1, m1))
                used.add((v2, m2))
        primes |= current - used
        current = merged
    return primes


def _covers(imp: tuple[int, int], term: int) -> bool:
    value, mask = imp
    return (term & ~mask) == (value & ~mask)


def _select_cover(primes: list[tuple[int, int]], onset: set[int]) -> list[tuple[int, int]]:
    chosen: list[tuple[int, int]] = []
    left = set(onset)
    while left:
        essential = None
        for t in sorted(left):
            cands = [p for p in primes if _covers(p, t)]
            if len(cands) == 1:
                essential = cands[0]
                break
        pick = essential or max(primes, key=lambda p: (sum(_covers(p, t) for t in left),
                                                       bin(p[1]).count("1"), -p[0], -p[1]))
        chosen.append(pick)
        left = {t for t in left if not _covers(pick, t)}
    return chosen


def simplify_guard(g: Guard, use_care: bool = False) -> Formula:
    """A small sum-of-products formula over ``g.predicates``.

    The result is equivalent to the DNF.  With ``use_care`` rows outside
    ``g.care`` are don't-cares, so the result only agrees with the DNF on the
    rows the source state admits.
    """
    n = len(g.predicates)
    onset = {_row_int(r) for r in g.rows}
    if not onset:
        return FALSE
    dont = set()
    if use_care and g.care is not None:
        dont = set(range(2 ** n)) - {_row_int(r) for r in g.care}
        dont -= onset
    if len(onset | dont) == 2 ** n:
        return TRUE
    primes = sorted(_primes(onset | dont, n))
    cover = sorted(_select_cover(primes, onset), key=lambda p: (p[1], -p[0]))
    terms = []
    for value, mask in cover:
        lits = []
        for k, p in enumerate(g.predicates):
            bit = 1 << (n - 1 - k)
            if mask & bit:
                continue
            lits.append(Var(p) if value & bit else Not(Var(p)))
        terms.append(conj(lits))
    return disj(terms)


def formula_equivalent_to_guard(f: Formula, g: Guard, use_care: bool = False) -> bool:
    rows = set(g.rows)
    for bits in itertools.product((False, True), repeat=len(g.predicates)):
        if use_care and g.care is not None and bits not in g.care:
            continue
        if evaluate(f, dict(zip(g.predicates, bits))) != (bits in rows):
            return False
    return True


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def literal_text(p: Predicate, value: bool) -> str:
    if p.kind == EQ:
        return f"{p.args[0]}{'=' if value else '≠'}{p.args[1]}"
    if p.kind == CONTAINS:
        return f"{p.args[1]}{'∈' if value else '∉'}{p.args[0]}"
    return str(p) if value else f"¬{p}"


def _term_literals(term: Formula) -> list[tuple[Predicate, bool]]:
    out = []
    for lit in conjuncts(term):
        if isinstance(lit, Not):
            out.append((lit.arg.key, False))
        else:
            out.append((lit.key, True))
    return sorted(out, key=lambda pv: (not pv[1], pv[0].sort_key))


def guard_text(f: Formula) -> str:
    """Render a sum-of-products guard, e.g. ``idOpt=null ∧ idMain≠idOpt``."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    terms = list(f.args) if isinstance(f, Or) else [f]
    texts = [" ∧ ".join(literal_text(p, v) for p, v in _term_literals(t)) for t in terms]
    if len(texts) == 1:
        return texts[0]
    return " ∨ ".join(f"({t})" if " ∧ " in t else t for t in texts)
