from __future__ import annotations

from typing import Hashable, Iterable

from ..logic import And, Const, Formula, Iff, Implies, Not, Or, Var, conjuncts


class CnfInstance:
    """Clauses over positive integer variables plus a table mapping the
    original formula variables to their integer ids.

    Auxiliary (definition) variables have no entry in the table.
    """

    def __init__(self):
        self.num_vars = 0
        self.clauses: list[list[int]] = []
        self.var_of: dict[Hashable, int] = {}
        self.key_of: dict[int, Hashable] = {}
        self._true: int | None = None

    def new_var(self, key: Hashable | None = None) -> int:
        self.num_vars += 1
        if key is not None:
            self.var_of[key] = self.num_vars
            self.key_of[self.num_vars] = key
        return self.num_vars

    def variable(self, key: Hashable) -> int:
        v = self.var_of.get(key)
        if v is None:
            v = self.new_var(key)
        return v

    def add_clause(self, lits: Iterable[int]) -> None:
        self.clauses.append(list(lits))

    def true_literal(self) -> int:
        if self._true is None:
            self._true = self.new_var()
            self.clauses.append([self._true])
        return self._true

    def is_original(self, var: int) -> bool:
        return var in self.key_of

    def to_dimacs(self, extra_units: Iterable[int] = ()) -> str:
        units = [[u] for u in extra_units]
        lines = [f"c {var} {key}" for var, key in sorted(self.key_of.items())]
        lines.append(f"p cnf {self.num_vars} {len(self.clauses) + len(units)}")
        for cl in self.clauses + units:
            lines.append(" ".join(map(str, cl)) + " 0")
        return "\n".join(lines) + "\n"

    def copy(self) -> CnfInstance:
        other = CnfInstance()
        other.num_vars = self.num_vars
        other.clauses = [list(c) for c in self.clauses]
        other.var_of = dict(self.var_of)
        other.key_of = dict(self.key_of)
        other._true = self._true
        return other


def to_cnf(formula: Formula, register: Iterable[Hashable] = (),
           instance: CnfInstance | None = None) -> CnfInstance:
    """Tseitin transformation.

    Every auxiliary variable is tied to its subformula by a full equivalence,
    so models of the CNF restricted to the original variables correspond one
    to one with models of ``formula``.  Keys in ``register`` get a variable
    even when they do not occur in the formula.
    """
    inst = instance or CnfInstance()
    for key in register:
        inst.variable(key)
    memo: dict[int, int] = {}

    def lit(f: Formula) -> int:
        fid = id(f)
        if fid in memo:
            return memo[fid]
        if isinstance(f, Var):
            out = inst.variable(f.key)
        elif isinstance(f, Const):
            t = inst.true_literal()
            out = t if f.value else -t
        elif isinstance(f, Not):
            out = -lit(f.arg)
        elif isinstance(f, And):
            args = [lit(a) for a in f.args]
            out = inst.new_var()
            for a in args:
                inst.add_clause([-out, a])
            inst.add_clause([out] + [-a for a in args])
        elif isinstance(f, (Or, Implies)):
            if isinstance(f, Or):
                args = [lit(a) for a in f.args]
            else:
                args = [-lit(f.lhs), lit(f.rhs)]
            out = inst.new_var()
            for a in args:
                inst.add_clause([out, -a])
            inst.add_clause([-out] + args)
        elif isinstance(f, Iff):
            a, b = lit(f.lhs), lit(f.rhs)
            out = inst.new_var()
            inst.add_clause([-out, -a, b])
            inst.add_clause([-out, a, -b])
            inst.add_clause([out, a, b])
            inst.add_clause([out, -a, -b])
        else:
            raise TypeError(f"not a formula: {f!r}")
        memo[fid] = out
        return out

    for part in conjuncts(formula):
        for clause in _top_clauses(part, lit):
            inst.add_clause(clause)
    return inst


def _top_clauses(f: Formula, lit) -> list[list[int]]:
    # asserted subformulas need no definition variable of their own
    if isinstance(f, Or):
        return [[lit(a) for a in f.args]]
    if isinstance(f, Implies):
        return [[-lit(f.lhs), lit(f.rhs)]]
    if isinstance(f, Iff):
        a, b = lit(f.lhs), lit(f.rhs)
        return [[-a, b], [a, -b]]
    return [[lit(f)]]
