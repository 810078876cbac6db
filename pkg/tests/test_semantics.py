from __future__ import annotations

import itertools
import json

import pytest

from collfsm.errors import ArityError, ConfigError, UnknownOperation
from collfsm.logic import Not, Var, conj, evaluate, iff
from collfsm.predicates import (EXC_PRED, Context, Primed, contains, empty, eq, predicate_universe)
from collfsm.semantics import DEFAULT_CATALOG, Catalog, expand
from collfsm.source.model import PlainOp


def P(p):
    return Var(Primed(p))


def op(name, recv, *args):
    return PlainOp(recv, name, tuple(args), 1)


def models(f, preds):
    """All assignments over preds and their primes satisfying f."""
    keys = list(preds) + [Primed(p) for p in preds]
    for bits in itertools.product((False, True), repeat=len(keys)):
        env = dict(zip(keys, bits))
        if evaluate(f, env):
            yield env


# -- lookup -------------------------------------------------------------------

def test_linked_hash_set_resolves_to_hash_set():
    assert DEFAULT_CATALOG.lookup("add", "LinkedHashSet") is DEFAULT_CATALOG.lookup("add", "HashSet")


def test_treeset_remove_entry():
    e = DEFAULT_CATALOG.lookup("remove", "TreeSet")
    assert e.collection_kind == "TreeSet" and e.mentions_exc and e.constants == ("null",)


def test_unknown_operation():
    with pytest.raises(UnknownOperation):
        DEFAULT_CATALOG.lookup("retainAll", "HashSet")


# -- expand ---------------------------------------------------------------------

def test_expand_clear():
    ctx = Context.of(["idSet"], ["id"])
    phi, touched = expand(DEFAULT_CATALOG.lookup("clear", "HashSet"), op("clear", "idSet"), ctx,
                          predicate_universe(ctx))
    assert phi == P(empty("idSet"))
    assert touched == {empty("idSet"), contains("idSet", "id")}


def test_expand_add():
    ctx = Context.of(["idSet"], ["id"])
    phi, touched = expand(DEFAULT_CATALOG.lookup("add", "HashSet"), op("add", "idSet", "id"), ctx,
                          predicate_universe(ctx))
    assert phi == conj(P(contains("idSet", "id")), Not(P(empty("idSet"))))
    assert touched == set(predicate_universe(ctx))


def test_expand_remove_frames_other_value():
    ctx = Context.of(["idSet"], ["idMain", "idOpt"])
    preds = predicate_universe(ctx)
    phi, touched = expand(DEFAULT_CATALOG.lookup("remove", "HashSet"), op("remove", "idSet", "idMain"),
                          ctx, preds)
    assert touched == {contains("idSet", "idMain"), empty("idSet")}
    parts = phi.args
    assert iff(P(contains("idSet", "idOpt")), Var(contains("idSet", "idOpt"))) in parts
    assert iff(P(eq("idMain", "idOpt")), Var(eq("idMain", "idOpt"))) in parts
    assert Not(P(contains("idSet", "idMain"))) in parts


@pytest.mark.parametrize("kind,colls,vals", [
    ("HashSet", ["a", "b"], ["x"]),
    ("HashSet", ["a"], ["x", "y"]),
    ("TreeSet", ["a"], ["x", "null"]),
    ("TreeSet", ["a", "b"], ["x", "null"]),
])
def test_frame_soundness_by_enumeration(kind, colls, vals):
    ctx = Context.of(colls, vals)
    preds = predicate_universe(ctx, include_exc=True)
    for name, args in (("add", ("x",)), ("remove", ("x",)), ("clear", ())):
        phi, touched = expand(DEFAULT_CATALOG.lookup(name, kind), op(name, "a", *args), ctx, preds)
        free = [p for p in preds if p not in touched]
        assert free
        for m in models(phi, preds):
            assert all(m[p] == m[Primed(p)] for p in free)


def test_hashset_remove_may_or_may_not_empty():
    ctx = Context.of(["c"], ["v"])
    preds = predicate_universe(ctx)
    phi, _ = expand(DEFAULT_CATALOG.lookup("remove", "HashSet"), op("remove", "c", "v"), ctx, preds)
    after = {m[Primed(empty("c"))] for m in models(phi, preds) if not m[empty("c")]}
    assert after == {True, False}


def test_treeset_exception_branches():
    ctx = Context.of(["c"], ["v", "null"])
    preds = predicate_universe(ctx, include_exc=True)
    for name in ("add", "remove"):
        phi, _ = expand(DEFAULT_CATALOG.lookup(name, "TreeSet"), op(name, "c", "v"), ctx, preds)
        ms = list(models(phi, preds))
        assert ms
        for m in ms:
            if m[eq("null", "v")]:
                assert m[Primed(EXC_PRED)]
                assert m[Primed(empty("c"))] == m[empty("c")]
            else:
                assert m[Primed(EXC_PRED)] == m[EXC_PRED]


def test_arity_errors():
    ctx = Context.of(["c"], ["v", "w"])
    preds = predicate_universe(ctx)
    with pytest.raises(ArityError):
        expand(DEFAULT_CATALOG.lookup("add", "HashSet"), op("add", "c", "v", "w"), ctx, preds)
    with pytest.raises(ArityError):
        expand(DEFAULT_CATALOG.lookup("add", "HashSet"), op("add", "v", "w"), ctx, preds)


def test_unmatched_formal_with_empty_sort_keeps_formula():
    # clear's value formal has nothing to map to; the formula must survive
    ctx = Context.of(["c"], [])
    phi, touched = expand(DEFAULT_CATALOG.lookup("clear", "HashSet"), op("clear", "c"), ctx,
                          predicate_universe(ctx))
    assert phi == P(empty("c")) and touched == {empty("c")}


# -- extensions -----------------------------------------------------------------

def test_extension_file(tmp_path):
    data = {"entries": [{"operation": "add", "collection_kind": "ArraySet", "collections": ["c"],
                         "values": ["v"], "affected": ["contains(c,v)", "empty(c)"],
                         "formula": "contains(c,v)'"}],
            "aliases": {"CopyOnWriteArraySet": "ArraySet"}}
    path = tmp_path / "ext.json"
    path.write_text(json.dumps(data))
    cat = Catalog.builtin()
    cat.load_extension(path)
    assert cat.lookup("add", "CopyOnWriteArraySet").collection_kind == "ArraySet"
    assert "ArraySet" in cat.kinds()


@pytest.mark.parametrize("entry", [
    {"operation": "x", "collection_kind": "K", "collections": ["c"], "values": [],
     "affected": [], "formula": "empty(d)'"},
    {"operation": "x", "collection_kind": "K", "collections": ["c"], "values": [],
     "affected": [], "formula": "empty(c)' &"},
    {"operation": "x", "collection_kind": "K", "collections": ["c"], "values": [],
     "affected": [], "formula": "empty(c)'", "colour": "red"},
])
def test_bad_extension_entries(entry):
    with pytest.raises(ConfigError):
        Catalog.from_data({"entries": [entry]})
