"""Conflict-driven clause learning SAT solver.

Two watched literals per clause, first-UIP learning, activity-based
branching with phase saving and Luby restarts.  There is no randomness, so
identical inputs always produce the same sequence of models.
"""

from __future__ import annotations

import heapq
from typing import Iterable


def luby(i: int) -> int:
    """The i-th element (0-based) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i %= size
    return 1 << seq


def _w(lit: int) -> int:
    return 2 * lit if lit > 0 else -2 * lit + 1


class Solver:
    restart_unit = 100
    var_decay = 0.95

    def __init__(self, num_vars: int = 0, clauses: Iterable[Iterable[int]] = ()):
        self.nvars = 0
        self.assign: list[int] = [0]        # +1 true, -1 false, 0 unassigned
        self.level: list[int] = [0]
        self.reason: list[list[int] | None] = [None]
        self.activity: list[float] = [0.0]
        self.phase: list[bool] = [False]
        self.watches: list[list[list[int]]] = [[], []]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.ok = True
        self.learnts: list[list[int]] = []
        self.heap: list[tuple[float, int]] = []
        self.var_inc = 1.0
        self.model: list[bool] | None = None
        self.stats = {"solves": 0, "conflicts": 0, "decisions": 0, "propagations": 0}
        self.ensure_vars(num_vars)
        for c in clauses:
            self.add_clause(c)

    # -- construction ---------------------------------------------------------

    def ensure_vars(self, n: int) -> None:
        while self.nvars < n:
            self.nvars += 1
            self.assign.append(0)
            self.level.append(0)
            self.reason.append(None)
            self.activity.append(0.0)
            self.phase.append(False)
            self.watches.append([])
            self.watches.append([])
            heapq.heappush(self.heap, (0.0, self.nvars))

    def new_var(self) -> int:
        self.ensure_vars(self.nvars + 1)
        return self.nvars

    def value(self, lit: int) -> int:
        a = self.assign[abs(lit)]
        return a if lit > 0 else -a

    def add_clause(self, lits: Iterable[int]) -> bool:
        """Add a clause permanently; returns False once the formula is UNSAT."""
        if not self.ok:
            return False
        self._cancel_until(0)
        clause: list[int] = []
        seen: set[int] = set()
        for lit in lits:
            if lit == 0:
                raise ValueError("0 is not a literal")
            self.ensure_vars(abs(lit))
            if -lit in seen:
                return True
            if lit in seen:
                continue
            val = self.value(lit)
            if val == 1:
                return True
            if val == -1:
                continue
            seen.add(lit)
            clause.append(lit)
        if not clause:
            self.ok = False
            return False
        if len(clause) == 1:
            self._enqueue(clause[0], None)
            if self._propagate() is not None:
                self.ok = False
            return self.ok
        self._attach(clause)
        return True

    def _attach(self, clause: list[int]) -> None:
        self.watches[_w(clause[0])].append(clause)
        self.watches[_w(clause[1])].append(clause)

    # -- core -------------------------------------------------------------------

    def _decision_level(self) -> int:
        return len(self.trail_lim)

    def _enqueue(self, lit: int, reason: list[int] | None) -> None:
        v = abs(lit)
        self.assign[v] = 1 if lit > 0 else -1
        self.level[v] = self._decision_level()
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self) -> list[int] | None:
        watches, assign = self.watches, self.assign
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            self.stats["propagations"] += 1
            false_lit = -p
            wi = _w(false_lit)
            ws = watches[wi]
            kept: list[list[int]] = []
            conflict = None
            n = len(ws)
            idx = 0
            while idx < n:
                c = ws[idx]
                idx += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                a = assign[abs(first)]
                fv = a if first > 0 else -a
                if fv == 1:
                    kept.append(c)
                    continue
                moved = False
                for k in range(2, len(c)):
                    lk = c[k]
                    ak = assign[abs(lk)]
                    if (ak if lk > 0 else -ak) != -1:
                        c[1], c[k] = lk, c[1]
                        watches[_w(lk)].append(c)
                        moved = True
                        break
                if moved:
                    continue
                kept.append(c)
                if fv == -1:
                    conflict = c
                    kept.extend(ws[idx:])
                    break
                self._enqueue(first, c)
            watches[wi] = kept
            if conflict is not None:
                self.qhead = len(self.trail)
                return conflict
        return None

    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for i in range(1, self.nvars + 1):
                self.activity[i] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[i], i) for i in range(1, self.nvars + 1) if self.assign[i] == 0]
            heapq.heapify(self.heap)
        elif self.assign[v] == 0:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        seen = set()
        learnt: list[int] = [0]
        path = 0
        p = None
        idx = len(self.trail) - 1
        current = self._decision_level()
        clause = confl
        while True:
            for q in (clause if p is None else clause[1:]):
                v = abs(q)
                if v not in seen and self.level[v] > 0:
                    seen.add(v)
                    self._bump(v)
                    if self.level[v] >= current:
                        path += 1
                    else:
                        learnt.append(q)
            while abs(self.trail[idx]) not in seen:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            clause = self.reason[abs(p)]
            seen.discard(abs(p))
            path -= 1
            if path == 0:
                break
        learnt[0] = -p
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda i: self.level[abs(learnt[i])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def _cancel_until(self, level: int) -> None:
        if self._decision_level() <= level:
            return
        stop = self.trail_lim[level]
        for lit in reversed(self.trail[stop:]):
            v = abs(lit)
            self.phase[v] = lit > 0
            self.assign[v] = 0
            self.reason[v] = None
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[stop:]
        del self.trail_lim[level:]
        self.qhead = len(self.trail)

    def _pick(self) -> int | None:
        while self.heap:
            _, v = heapq.heappop(self.heap)
            if self.assign[v] == 0:
                return v
        for v in range(1, self.nvars + 1):
            if self.assign[v] == 0:
                return v
        return None

    def _search(self, budget: int, assumptions: list[int]) -> bool | None:
        conflicts = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                conflicts += 1
                self.stats["conflicts"] += 1
                if self._decision_level() == 0:
                    self.ok = False
                    return False
                learnt, back = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._attach(learnt)
                    self.learnts.append(learnt)
                    self._enqueue(learnt[0], learnt)
                self.var_inc /= self.var_decay
                continue
            if conflicts >= budget:
                self._cancel_until(0)
                return None
            decision = None
            while self._decision_level() < len(assumptions):
                a = assumptions[self._decision_level()]
                val = self.value(a)
                if val == 1:
                    self.trail_lim.append(len(self.trail))
                elif val == -1:
                    return False
                else:
                    decision = a
                    break
            if decision is None:
                v = self._pick()
                if v is None:
                    self.model = [False] + [self.assign[i] == 1 for i in range(1, self.nvars + 1)]
                    return True
                self.stats["decisions"] += 1
                decision = v if self.phase[v] else -v
            self.trail_lim.append(len(self.trail))
            self._enqueue(decision, None)

    def solve(self, assumptions: Iterable[int] = ()) -> bool:
        """Decide satisfiability under ``assumptions`` (literals held true for
        this call only).  On success the model is in ``self.model``."""
        self.stats["solves"] += 1
        self.model = None
        if not self.ok:
            return False
        assumptions = list(assumptions)
        for a in assumptions:
            self.ensure_vars(abs(a))
        self._cancel_until(0)
        if self._propagate() is not None:
            self.ok = False
            return False
        restarts = 0
        while True:
            status = self._search(luby(restarts) * self.restart_unit, assumptions)
            if status is not None:
                break
            restarts += 1
        self._cancel_until(0)
        return status
