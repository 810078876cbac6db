"""Brute-force transition guards, computed without CNF or the SAT solver.

Small tasks are decided by evaluating the encoding on every assignment of
its trace variables (vectorised with numpy).  Larger ones fall back to a
plain backtracking search over the top-level conjuncts of the encoding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .extract import (INITIAL, AbstractState, ExtractionOptions, Fsm, MethodAnalysis,
                      analyse_method, compute_transition, custom_state_space, extract_fsm,
                      state_space, unit_state_predicates)
from .guards import Guard
from .logic import (FALSE, TRUE, And, Const, Formula, Iff, Implies, Not, Or, Var, conjuncts,
                    evaluate, map_vars, variables)
from .source.model import ApiUnitModel

TRUTH_TABLE_LIMIT = 24
_CHUNK_BITS = 20


def _pin(formula: Formula, pins) -> Formula:
    return map_vars(formula, lambda k: (TRUE if pins[k] else FALSE) if k in pins else Var(k))


def _np_eval(f: Formula, cols: dict, size: int):
    memo: dict[int, np.ndarray] = {}

    def go(node: Formula):
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Const):
            out = np.full(size, node.value, dtype=bool)
        elif isinstance(node, Var):
            out = cols[node.key]
        elif isinstance(node, Not):
            out = ~go(node.arg)
        elif isinstance(node, And):
            out = np.ones(size, dtype=bool)
            for a in node.args:
                out = out & go(a)
        elif isinstance(node, Or):
            out = np.zeros(size, dtype=bool)
            for a in node.args:
                out = out | go(a)
        elif isinstance(node, Implies):
            out = ~go(node.lhs) | go(node.rhs)
        elif isinstance(node, Iff):
            out = go(node.lhs) == go(node.rhs)
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[key] = out
        return out

    return go(f)


def truth_table_rows(formula: Formula, free: list, view: list) -> set[tuple[bool, ...]]:
    """Projections on ``view`` of all satisfying assignments over ``free``."""
    n = len(free)
    total = 1 << n
    chunk = min(total, 1 << _CHUNK_BITS)
    weights = np.array([1 << (len(view) - 1 - k) for k in range(len(view))], dtype=np.int64)
    found: set[int] = set()
    for start in range(0, total, chunk):
        idx = np.arange(start, start + chunk, dtype=np.int64)
        cols = {key: ((idx >> k) & 1).astype(bool) for k, key in enumerate(free)}
        sat = _np_eval(formula, cols, chunk)
        if not sat.any():
            continue
        if view:
            codes = np.zeros(chunk, dtype=np.int64)
            for w, key in zip(weights, view):
                codes += cols[key].astype(np.int64) * w
            found.update(int(c) for c in np.unique(codes[sat]))
        else:
            found.add(0)
    width = len(view)
    return {tuple(bool((c >> (width - 1 - k)) & 1) for k in range(width)) for c in found}


def search_rows(formula: Formula, free: list, view: list) -> set[tuple[bool, ...]]:
    """Same result as :func:`truth_table_rows` by backtracking; each
    conjunct is checked as soon as all of its variables are assigned."""
    order = list(view) + [k for k in free if k not in set(view)]
    pos = {k: n for n, k in enumerate(order)}
    checks: list[list[Formula]] = [[] for _ in order]
    for part in conjuncts(formula):
        vs = variables(part)
        if not vs:
            if not evaluate(part, {}):
                return set()
            continue
        checks[max(pos[v] for v in vs)].append(part)
    env: dict = {}
    width = len(view)

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        key = order[k]
        for value in (False, True):
            env[key] = value
            if all(evaluate(c, env) for c in checks[k]) and extend(k + 1):
                del env[key]
                return True
        del env[key]
        return False

    rows: set[tuple[bool, ...]] = set()

    def prefix(k: int) -> None:
        if k == width:
            if extend(width):
                rows.add(tuple(env[v] for v in view))
            return
        key = order[k]
        for value in (False, True):
            env[key] = value
            if all(evaluate(c, env) for c in checks[k]):
                prefix(k + 1)
        del env[key]

    prefix(0)
    return rows


def oracle_transition(analysis: MethodAnalysis, src: AbstractState, dst: AbstractState,
                      limit: int = TRUTH_TABLE_LIMIT) -> Guard:
    p_nd = analysis.p_nd
    pins = analysis.pins(src, dst)
    if pins is None:
        return Guard.false(p_nd)
    formula = _pin(analysis.formula, pins)
    view = analysis.entry_view()
    free = [k for k in analysis.trace_keys() if k not in pins]
    stray = variables(formula) - set(free)
    if stray:
        raise ValueError(f"encoding mentions variables outside the trace: {sorted(map(str, stray))}")
    if len(free) <= limit:
        rows = truth_table_rows(formula, free, view)
    else:
        rows = search_rows(formula, free, view)
    return Guard(p_nd, tuple(rows))


def oracle_fsm(unit: ApiUnitModel, options: ExtractionOptions | None = None,
               limit: int = TRUTH_TABLE_LIMIT) -> Fsm:
    return extract_fsm(unit, options, guard_fn=lambda an, a, b: oracle_transition(an, a, b, limit))


# ---------------------------------------------------------------------------
# Differential check
# ---------------------------------------------------------------------------


@dataclass
class OracleReport:
    checked: list[tuple[str, str, str]] = field(default_factory=list)
    mismatches: list[tuple[str, str, str]] = field(default_factory=list)
    skipped: list[tuple[str, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def oracle_check(unit: ApiUnitModel, options: ExtractionOptions | None = None,
                 limit: int = TRUTH_TABLE_LIMIT) -> OracleReport:
    """Compare SAT and truth-table guards for every transition task whose
    trace has at most ``limit`` variables."""
    opts = options or ExtractionOptions()
    p_st = unit_state_predicates(unit, opts.catalog)
    space = (custom_state_space(p_st, opts.states) if opts.states is not None
             else state_space(p_st, opts.state_predicates))
    report = OracleReport()
    tasks = [(analyse_method(unit, unit.constructor, opts.catalog,
                             opts.contexts.get(unit.constructor.name, "auto"), True),
              [INITIAL])]
    for m in unit.methods:
        tasks.append((analyse_method(unit, m, opts.catalog, opts.contexts.get(m.name, "auto")),
                      list(space.concrete)))
    for an, sources in tasks:
        if an.num_trace_vars > limit:
            report.skipped.append((an.meth.name, an.num_trace_vars))
            continue
        for src in sources:
            for dst in space.concrete:
                mine = compute_transition(an, src, dst, opts.blocking, opts.solver_factory).guard
                ref = oracle_transition(an, src, dst, limit)
                tag = (src.label(), an.meth.name, dst.label())
                report.checked.append(tag)
                if not mine.equivalent(ref):
                    report.mismatches.append(tag)
    return report
