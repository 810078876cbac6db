from __future__ import annotations

import itertools
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from collfsm.errors import SolverError
from collfsm.logic import FALSE, TRUE, Not, Var, conj, disj, evaluate, iff, implies, variables
from collfsm.predicates import Context, at, contains, empty, index_formula, instantiate_axioms
from collfsm.sat import (FULL_TRACE, PROJECTION, ExternalSolver, Solver, enumerate_models,
                         solve, to_cnf)
from collfsm.sat.cdcl import luby

BRUTE = [sys.executable, str(Path(__file__).parent / "tools" / "brute_sat.py")]


def brute_models(f, keys):
    keys = list(keys)
    return [dict(zip(keys, bits)) for bits in itertools.product((False, True), repeat=len(keys))
            if evaluate(f, dict(zip(keys, bits)))]


# -- CNF ----------------------------------------------------------------------

def test_true_has_no_clauses():
    inst = to_cnf(TRUE)
    assert inst.clauses == [] or all(len(c) == 1 for c in inst.clauses)
    assert solve(inst) is not None


def test_contradiction_unsat():
    x = Var("x")
    assert solve(to_cnf(conj(x, Not(x)))) is None
    assert solve(to_cnf(FALSE)) is None


def test_iff_has_two_models():
    a, b = Var("a"), Var("b")
    e = enumerate_models(to_cnf(iff(a, b)), projection=["a", "b"])
    assert sorted(tuple(m.values()) for m in e.assignments) == [(False, False), (True, True)]


def test_registered_keys_are_free():
    inst = to_cnf(Var("a"), register=["a", "b"])
    e = enumerate_models(inst, projection=["b"])
    assert len(e.assignments) == 2


def test_dimacs_header():
    inst = to_cnf(disj(Var("a"), Var("b")))
    text = inst.to_dimacs()
    header = [l for l in text.splitlines() if l.startswith("p ")]
    assert header == [f"p cnf {inst.num_vars} {len(inst.clauses)}"]
    assert "c 1 a" in text.splitlines()


# -- solving over predicate formulas ------------------------------------------

CTX = Context.of(["c"], ["v"])


def test_axioms_reject_empty_and_contains():
    ax = index_formula(instantiate_axioms(CTX), 0)
    E, C = at(empty("c"), 0), at(contains("c", "v"), 0)
    inst = to_cnf(ax, register=[E.key, C.key])
    assert solve(inst, {E.key: True, C.key: True}) is None
    m = solve(inst, {E.key: True})
    assert m is not None and m[C.key] is False


def test_add_cannot_leave_collection_empty():
    f = conj(at(contains("c", "v"), 1), Not(at(empty("c"), 1)))
    E0, E1 = at(empty("c"), 0).key, at(empty("c"), 1).key
    inst = to_cnf(f, register=[E0, E1])
    assert solve(inst, {E0: True, E1: True}) is None
    assert solve(inst, {E0: True, E1: False}) is not None


def test_unknown_assumption_key():
    with pytest.raises(KeyError):
        solve(to_cnf(Var("a")), {"zz": True})


# -- CDCL ---------------------------------------------------------------------

def test_luby_prefix():
    assert [luby(i) for i in range(15)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


def test_pigeonhole_unsat():
    n = 6
    var = lambda p, h: p * n + h + 1  # noqa: E731
    clauses = [[var(p, h) for h in range(n)] for p in range(n + 1)]
    for h in range(n):
        for p, q in itertools.combinations(range(n + 1), 2):
            clauses.append([-var(p, h), -var(q, h)])
    assert Solver(n * (n + 1), clauses).solve() is False


def test_failed_assumption_keeps_solver_usable():
    s = Solver(2, [[1, 2]])
    assert s.solve([-1, -2]) is False
    assert s.solve([-1]) is True and s.model[2] is True


def test_empty_clause_makes_unsat():
    s = Solver(1)
    assert s.add_clause([]) is False
    assert s.solve() is False


clause_lists = st.integers(1, 7).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v])),
                      min_size=1, max_size=3), max_size=25)))


@settings(max_examples=150, deadline=None)
@given(clause_lists)
def test_cdcl_agrees_with_brute_force(case):
    n, clauses = case
    sat = any(all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses)
              for bits in itertools.product((False, True), repeat=n))
    s = Solver(n, clauses)
    assert s.solve() is sat
    if sat:
        assert all(any(s.model[abs(l)] == (l > 0) for l in c) for c in clauses)


# -- enumeration ---------------------------------------------------------------

def test_enumerate_single_var():
    e = enumerate_models(to_cnf(TRUE, register=["a"]), projection=["a"])
    assert sorted(m["a"] for m in e.assignments) == [False, True]


def test_enumerate_unsat_is_empty():
    e = enumerate_models(to_cnf(FALSE, register=["a"]), projection=["a"])
    assert e.assignments == [] and e.solver_calls == 1


formulas = st.recursive(
    st.sampled_from([Var(k) for k in "abcde"]),
    lambda sub: st.one_of(
        sub.map(Not),
        st.lists(sub, min_size=2, max_size=3).map(conj),
        st.lists(sub, min_size=2, max_size=3).map(disj),
        st.tuples(sub, sub).map(lambda t: implies(*t)),
        st.tuples(sub, sub).map(lambda t: iff(*t)),
    ), max_leaves=10)


@settings(max_examples=120, deadline=None)
@given(formulas, st.sampled_from([PROJECTION, FULL_TRACE]), st.integers(0, 3))
def test_enumeration_is_complete_projection(f, mode, width):
    keys = sorted(variables(f)) or ["a"]
    view = keys[:width]
    inst = to_cnf(f, register=keys)
    got = {tuple(m[k] for k in view) for m in enumerate_models(inst, projection=view, mode=mode).assignments}
    want = {tuple(m[k] for k in view) for m in brute_models(f, keys)}
    assert got == want


def test_enumeration_deterministic():
    f = disj(conj(Var("a"), Var("b")), Not(Var("c")))
    runs = [enumerate_models(to_cnf(f), projection=["a", "b", "c"]).assignments for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]


def test_bad_mode_and_projection():
    inst = to_cnf(Var("a"))
    with pytest.raises(ValueError):
        enumerate_models(inst, projection=["a"], mode="lazy")
    with pytest.raises(KeyError):
        enumerate_models(inst, projection=["b"])


# -- external solver ----------------------------------------------------------

def external(inst):
    return ExternalSolver(BRUTE, inst.num_vars, inst.clauses, timeout=30)


def test_external_matches_embedded():
    f = conj(disj(Var("a"), Var("b")), implies(Var("a"), Var("c")))
    inst = to_cnf(f)
    mine = enumerate_models(inst, projection=["a", "b", "c"]).assignments
    theirs = enumerate_models(inst, projection=["a", "b", "c"], solver_factory=external).assignments
    key = lambda m: tuple(m.values())  # noqa: E731
    assert sorted(mine, key=key) == sorted(theirs, key=key)
    assert solve(to_cnf(conj(Var("a"), Not(Var("a")))), solver_factory=external) is None


def test_external_without_verdict():
    s = ExternalSolver([sys.executable, "-c", "print('hello')"], 1, [[1]])
    with pytest.raises(SolverError):
        s.solve()


def test_external_missing_program():
    s = ExternalSolver(["/nonexistent/solver"], 1, [[1]])
    with pytest.raises(SolverError):
        s.solve()
