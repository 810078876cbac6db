from __future__ import annotations

import itertools

from hypothesis import given, strategies as st

from collfsm.logic import (FALSE, TRUE, And, Const, Iff, Implies, Not, Or, Var, conj, conjuncts,
                           connective_count, disj, evaluate, iff, implies, map_vars, neg, to_smt,
                           to_text, variables)
from collfsm.predicates import parse_formula

NAMES = ["a", "b", "c"]


def formulas(depth=3):
    leaves = st.one_of(st.sampled_from([Var(n) for n in NAMES]), st.sampled_from([TRUE, FALSE]))
    return st.recursive(leaves, lambda sub: st.one_of(
        sub.map(Not),
        st.lists(sub, min_size=2, max_size=3).map(lambda xs: And(tuple(xs))),
        st.lists(sub, min_size=2, max_size=3).map(lambda xs: Or(tuple(xs))),
        st.tuples(sub, sub).map(lambda p: Implies(*p)),
        st.tuples(sub, sub).map(lambda p: Iff(*p)),
    ), max_leaves=8)


def envs():
    for bits in itertools.product((False, True), repeat=len(NAMES)):
        yield dict(zip(NAMES, bits))


def test_empty_connectives():
    assert conj() == TRUE and disj() == FALSE


def test_constant_folding():
    a = Var("a")
    assert conj(a, TRUE) == a and conj(a, FALSE) == FALSE
    assert disj(a, TRUE) == TRUE and disj(FALSE, a) == a
    assert neg(neg(a)) == a
    assert implies(FALSE, a) == TRUE and implies(a, FALSE) == Not(a)
    assert iff(a, a) == TRUE and iff(TRUE, a) == a


def test_conj_flattens():
    a, b, c = Var("a"), Var("b"), Var("c")
    assert conj(conj(a, b), c) == And((a, b, c))
    assert conjuncts(And((a, And((b, c))))) == [a, b, c]


@given(formulas(), formulas())
def test_smart_constructors_preserve_meaning(f, g):
    for env in envs():
        assert evaluate(conj(f, g), env) == (evaluate(f, env) and evaluate(g, env))
        assert evaluate(disj(f, g), env) == (evaluate(f, env) or evaluate(g, env))
        assert evaluate(implies(f, g), env) == ((not evaluate(f, env)) or evaluate(g, env))
        assert evaluate(iff(f, g), env) == (evaluate(f, env) == evaluate(g, env))
        assert evaluate(neg(f), env) == (not evaluate(f, env))


@given(formulas())
def test_map_vars_keeps_structure(f):
    g = map_vars(f, lambda k: Var(k + "'"))
    assert connective_count(f) == connective_count(g)
    assert variables(g) == {k + "'" for k in variables(f)}


def test_text_round_trip_through_catalog_grammar():
    f = parse_formula("(empty(c) -> empty(c)') & !contains(c,v)' | exc <-> exc'")
    assert parse_formula(to_text(f)) == f


def test_to_smt():
    assert to_smt(Implies(Var("a"), Not(Var("b")))) == "(=> a (not b))"
    assert to_smt(Const(True)) == "true"
