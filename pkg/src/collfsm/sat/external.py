"""Run an external DIMACS solver.

Contract: the program takes the path of a DIMACS file as its last argument
and prints ``s SATISFIABLE`` or ``s UNSATISFIABLE``; a satisfiable answer
carries one or more ``v`` lines listing literals, terminated by ``0``.
"""

from __future__ import annotations

import os
import subprocess
import tempfile
from typing import Iterable, Sequence

from ..errors import SolverError


class ExternalSolver:
    """Drop-in replacement for :class:`~collfsm.sat.cdcl.Solver`.

    Clauses are buffered and the whole problem is written out on every call.
    """

    def __init__(self, command: Sequence[str], num_vars: int = 0,
                 clauses: Iterable[Iterable[int]] = (), timeout: float | None = None):
        if not command:
            raise SolverError("empty solver command")
        self.command = list(command)
        self.timeout = timeout
        self.nvars = num_vars
        self.clauses: list[list[int]] = []
        self.model: list[bool] | None = None
        self.stats = {"solves": 0}
        for c in clauses:
            self.add_clause(c)

    def add_clause(self, lits: Iterable[int]) -> bool:
        clause = list(lits)
        for lit in clause:
            self.nvars = max(self.nvars, abs(lit))
        self.clauses.append(clause)
        return True

    def solve(self, assumptions: Iterable[int] = ()) -> bool:
        self.stats["solves"] += 1
        self.model = None
        units = [[a] for a in assumptions]
        for (a,) in units:
            self.nvars = max(self.nvars, abs(a))
        rows = self.clauses + units
        text = [f"p cnf {self.nvars} {len(rows)}"]
        text += [" ".join(map(str, c)) + " 0" for c in rows]
        fd, path = tempfile.mkstemp(suffix=".cnf")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write("\n".join(text) + "\n")
            try:
                proc = subprocess.run(self.command + [path], capture_output=True, text=True,
                                      timeout=self.timeout)
            except (OSError, subprocess.TimeoutExpired) as exc:
                raise SolverError(f"external solver failed: {exc}") from exc
        finally:
            os.unlink(path)
        return self._read(proc.stdout)

    def _read(self, out: str) -> bool:
        status = None
        lits: list[int] = []
        for line in out.splitlines():
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "s":
                status = " ".join(parts[1:])
            elif parts[0] == "v":
                lits.extend(int(x) for x in parts[1:])
        if status == "UNSATISFIABLE":
            return False
        if status != "SATISFIABLE":
            raise SolverError(f"external solver gave no verdict; output was {out[:200]!r}")
        model = [False] * (self.nvars + 1)
        for lit in lits:
            if lit != 0 and abs(lit) <= self.nvars:
                model[abs(lit)] = lit > 0
        self.model = model
        return True
