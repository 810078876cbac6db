from __future__ import annotations

import itertools

import pytest

from collfsm.errors import ConfigError
from collfsm.logic import TRUE, And, Implies, Iff, Not, Var, connective_count, evaluate, variables
from collfsm.predicates import (EXC_PRED, Context, IndexedVariable, Predicate, Primed, at,
                                build_context, contains, empty, eq, index_formula,
                                instantiate_axioms, parse_formula, parse_predicate,
                                predicate_universe, split_predicates)
from collfsm.semantics import DEFAULT_CATALOG


def test_eq_is_canonical():
    assert eq("b", "a") == eq("a", "b")
    assert eq("b", "a").args == ("a", "b")
    with pytest.raises(ValueError):
        eq("a", "a")
    with pytest.raises(ValueError):
        Predicate("eq", ("b", "a"))


def test_rename_collapses_self_equality():
    assert eq("a", "b").rename({"a": "b"}) is True
    assert contains("c", "v").rename({"v": "w"}) == contains("c", "w")


# -- build_context ------------------------------------------------------------

def _ctx(unit, name):
    return build_context(unit, unit.method(name), "auto", DEFAULT_CATALOG.forced_constants(unit))


def test_context_hashset_add(hashset_unit):
    ctx = _ctx(hashset_unit, "add")
    assert ctx == Context.of(["idSet"], ["id"], ["id"])


def test_context_treeset_has_null(treeset_unit):
    for name in ("add", "removeId"):
        ctx = _ctx(treeset_unit, name)
        assert "null" in ctx.values and ctx.is_state_symbol("null")


def test_context_without_parameters(hashset_unit):
    ctx = _ctx(hashset_unit, "ExampleImpl")
    assert ctx == Context.of(["idSet"], [])


def test_context_explicit_selection(hashset_unit):
    meth = hashset_unit.method("removeId")
    ctx = build_context(hashset_unit, meth, ["idSet"])
    # referenced symbols are always included
    assert ctx.values == {"idMain", "idOpt"}
    with pytest.raises(ConfigError):
        build_context(hashset_unit, meth, ["nope"])


# -- predicate_universe -------------------------------------------------------

def test_universe_single():
    assert set(predicate_universe(Context.of(["c"], ["v"]))) == {contains("c", "v"), empty("c")}


def test_universe_running_example():
    got = set(predicate_universe(Context.of(["idSet"], ["idMain", "idOpt"])))
    assert got == {eq("idMain", "idOpt"), contains("idSet", "idMain"), contains("idSet", "idOpt"),
                   empty("idSet")}


def test_universe_treeset():
    got = predicate_universe(Context.of(["idSet"], ["idMain", "idOpt", "null"]), include_exc=True)
    assert len(got) == 8
    assert eq("idMain", "null") in got and eq("idOpt", "null") in got and EXC_PRED in got


def test_universe_never_has_both_orientations():
    ctx = Context.of(["c", "d"], ["x", "y", "z"])
    preds = predicate_universe(ctx)
    assert len(preds) == len(set(preds))
    assert all(p.args[0] < p.args[1] for p in preds if p.kind == "eq")


def test_partition():
    ctx = Context.of(["s"], ["k", "p"], ["p"])
    st, nd = split_predicates(ctx, predicate_universe(ctx, True))
    assert EXC_PRED in st and contains("s", "k") in st
    assert set(nd) == {eq("k", "p"), contains("s", "p")}
    assert not set(st) & set(nd)


# -- axioms ---------------------------------------------------------------------

def test_axiom_empty_single():
    ax = instantiate_axioms(Context.of(["c"], ["v"]))
    assert ax == Implies(Var(empty("c")), Not(Var(contains("c", "v"))))


def test_axioms_without_values():
    assert instantiate_axioms(Context.of(["c"], [])) == TRUE


def test_axioms_two_values():
    ax = instantiate_axioms(Context.of(["c"], ["v1", "v2"]))
    assert isinstance(ax, And)
    assert Implies(Var(eq("v1", "v2")), Iff(Var(contains("c", "v1")), Var(contains("c", "v2")))) in ax.args
    assert Implies(Var(empty("c")), Not(Var(contains("c", "v1")))) in ax.args
    assert Implies(Var(empty("c")), Not(Var(contains("c", "v2")))) in ax.args
    assert len(ax.args) == 3


def test_axiom_closure_by_enumeration():
    ctx = Context.of(["c", "d"], ["u", "v"])
    preds = predicate_universe(ctx)
    ax = instantiate_axioms(ctx, preds)
    for bits in itertools.product((False, True), repeat=len(preds)):
        env = dict(zip(preds, bits))
        if evaluate(ax, env):
            for c in ("c", "d"):
                assert not any(env[empty(c)] and env[contains(c, v)] for v in ("u", "v"))


# -- index_formula --------------------------------------------------------------

def test_index_primed():
    f = parse_formula("empty(c)'")
    assert index_formula(f, 0, 1) == at(empty("c"), 1)


def test_index_implication():
    f = parse_formula("empty(c) -> empty(c)'")
    assert index_formula(f, 2, 3) == Implies(at(empty("c"), 2), at(empty("c"), 3))


def test_index_axioms():
    ax = instantiate_axioms(Context.of(["c"], ["v", "w"]))
    indexed = index_formula(ax, 0)
    assert all(isinstance(k, IndexedVariable) and k.step == 0 for k in variables(indexed))
    assert connective_count(indexed) == connective_count(ax)


def test_index_rejects_primes_without_target():
    with pytest.raises(ValueError):
        index_formula(Var(Primed(empty("c"))), 0)


def test_parse_predicate():
    assert parse_predicate("eq(b,a)") == eq("a", "b")
    assert parse_predicate("exc") == EXC_PRED
    assert str(parse_predicate('contains(s,"x")')) == 'contains(s,"x")'
    with pytest.raises(ValueError):
        parse_predicate("empty(a) & exc")
