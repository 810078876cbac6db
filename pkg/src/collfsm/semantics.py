"""Predicate semantics of collection operations.

Each entry is a quadruple of formal collections, formal values, the
predicate templates an operation may affect, and a transition formula over
current (``p``) and post (``p'``) predicate values.  Entries are declared as
plain data in the same JSON shape accepted for catalog extensions::

    {"entries": [{"operation": "add", "collection_kind": "HashSet",
                  "collections": ["c"], "values": ["v"], "constants": [],
                  "affected": ["contains(c,v)", "empty(c)"],
                  "formula": "contains(c,v)' & !empty(c)'"}],
     "aliases": {"LinkedHashSet": "HashSet"}}

Formula syntax: atoms ``eq(a,b)``, ``contains(c,v)``, ``empty(c)``, ``exc``;
a trailing ``'`` marks the post value; connectives ``! & | -> <->``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .errors import ArityError, CollFsmError, ConfigError, UnknownOperation, UnknownSymbol
from .logic import TRUE, Formula, Var, conj, iff, map_vars, variables
from .predicates import EXC_PRED, Context, Predicate, Primed, parse_formula, parse_predicate
from .source.model import PlainOp


@dataclass(frozen=True)
class OpSemantics:
    operation: str
    collection_kind: str
    collections: tuple[str, ...]
    values: tuple[str, ...]
    affected: tuple[Predicate, ...]
    formula: Formula
    constants: tuple[str, ...] = ()
    source: str = field(default="", compare=False)

    def __post_init__(self):
        formals = set(self.collections) | set(self.values) | set(self.constants)
        used = {a for p in self.affected for a in p.args}
        used |= {a for k in variables(self.formula) for a in _pred_of(k).args}
        stray = used - formals
        if stray:
            raise ConfigError(f"{self.operation}/{self.collection_kind}: undeclared symbol(s) "
                              f"{', '.join(sorted(stray))}")

    @property
    def mentions_exc(self) -> bool:
        return EXC_PRED in self.affected or any(_pred_of(k) == EXC_PRED for k in variables(self.formula))


def _pred_of(key) -> Predicate:
    return key.pred if isinstance(key, Primed) else key


# ---------------------------------------------------------------------------
# Shipped entries
# ---------------------------------------------------------------------------

_SET_AFFECTED = ["contains(c,v)", "empty(c)"]
_NULL_AFFECTED = ["contains(c,v)", "empty(c)", "eq(v,null)", "exc"]

_TREE_ADD = ("(eq(v,null) <-> eq(v,null)')"
             " & (!eq(v,null) -> (contains(c,v)' & !empty(c)' & (exc' <-> exc)))"
             " & (eq(v,null) -> ((contains(c,v) <-> contains(c,v)') & (empty(c) <-> empty(c)') & exc'))")
_TREE_REMOVE = ("(eq(v,null) <-> eq(v,null)')"
                " & (!eq(v,null) -> (!contains(c,v)' & (empty(c) -> empty(c)') & (exc' <-> exc)))"
                " & (eq(v,null) -> ((contains(c,v) <-> contains(c,v)') & (empty(c) <-> empty(c)') & exc'))")


def _entry(op, kind, formula, affected=_SET_AFFECTED, constants=()):
    return {"operation": op, "collection_kind": kind, "collections": ["c"], "values": ["v"],
            "constants": list(constants), "affected": list(affected), "formula": formula}


BUILTIN_CATALOG = {
    "entries": [
        _entry("add", "HashSet", "contains(c,v)' & !empty(c)'"),
        _entry("remove", "HashSet", "!contains(c,v)' & (empty(c) -> empty(c)')"),
        _entry("clear", "HashSet", "empty(c)'"),
        _entry("construct", "HashSet", "empty(c)'"),
        _entry("add", "TreeSet", _TREE_ADD, _NULL_AFFECTED, ["null"]),
        _entry("remove", "TreeSet", _TREE_REMOVE, _NULL_AFFECTED, ["null"]),
        _entry("clear", "TreeSet", "empty(c)'"),
        _entry("construct", "TreeSet", "empty(c)'"),
    ],
    "aliases": {"LinkedHashSet": "HashSet"},
}


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

class Catalog:
    def __init__(self, entries: Iterable[OpSemantics] = (), aliases: Mapping[str, str] | None = None):
        self.entries: dict[tuple[str, str], OpSemantics] = {}
        self.aliases: dict[str, str] = dict(aliases or {})
        for e in entries:
            self.entries[(e.operation, e.collection_kind)] = e

    @classmethod
    def from_data(cls, data: Mapping, source: str = "<data>") -> Catalog:
        cat = cls()
        cat.extend(data, source)
        return cat

    @classmethod
    def builtin(cls) -> Catalog:
        return cls.from_data(BUILTIN_CATALOG, "<builtin>")

    def extend(self, data: Mapping, source: str = "<data>") -> None:
        unknown = set(data) - {"entries", "aliases"}
        if unknown:
            raise ConfigError(f"unknown key(s) {', '.join(sorted(unknown))}", source)
        for n, raw in enumerate(data.get("entries", [])):
            where = f"{source}:entries[{n}]"
            self.entries[(raw.get("operation"), raw.get("collection_kind"))] = _parse_entry(raw, where)
        for alias, target in data.get("aliases", {}).items():
            self.aliases[alias] = target

    def load_extension(self, path: str | Path) -> None:
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read catalog extension: {exc}", str(path)) from exc
        self.extend(data, str(path))

    def resolve_kind(self, kind: str) -> str:
        seen = set()
        while kind in self.aliases and kind not in seen:
            seen.add(kind)
            kind = self.aliases[kind]
        return kind

    def lookup(self, operation: str, collection_kind: str) -> OpSemantics:
        key = (operation, self.resolve_kind(collection_kind))
        try:
            return self.entries[key]
        except KeyError:
            raise UnknownOperation(f"no semantics for {operation!r} on {collection_kind}") from None

    def kinds(self) -> list[str]:
        return sorted({k for _, k in self.entries} | set(self.aliases))

    def operations(self) -> list[str]:
        return sorted({op for op, _ in self.entries} - {"construct"})

    def entries_for(self, unit) -> list[OpSemantics]:
        return [self.lookup(op, kind) for op, kind in sorted(unit.operations())]

    def forced_constants(self, unit) -> list[str]:
        out: dict[str, None] = {}
        for e in self.entries_for(unit):
            for c in e.constants:
                out.setdefault(c)
        return list(out)

    def uses_exc(self, unit) -> bool:
        return any(e.mentions_exc for e in self.entries_for(unit))


def _parse_entry(raw: Mapping, where: str) -> OpSemantics:
    required = {"operation", "collection_kind", "collections", "values", "affected", "formula"}
    allowed = required | {"constants"}
    missing = required - set(raw)
    if missing:
        raise ConfigError(f"missing key(s) {', '.join(sorted(missing))}", where)
    extra = set(raw) - allowed
    if extra:
        raise ConfigError(f"unknown key(s) {', '.join(sorted(extra))}", where)
    try:
        affected = tuple(parse_predicate(p) for p in raw["affected"])
        formula = parse_formula(raw["formula"])
    except ValueError as exc:
        raise ConfigError(str(exc), where) from exc
    colls = tuple(raw["collections"])
    if not colls:
        raise ConfigError("an operation needs at least one collection formal (its receiver)", where)
    return OpSemantics(raw["operation"], raw["collection_kind"], colls, tuple(raw["values"]),
                       affected, formula, tuple(raw.get("constants", ())), where)


DEFAULT_CATALOG = Catalog.builtin()


# ---------------------------------------------------------------------------
# Expansion of one invocation
# ---------------------------------------------------------------------------

def expand(sem: OpSemantics, invocation: PlainOp, ctx: Context,
           preds: Iterable[Predicate]) -> tuple[Formula, frozenset[Predicate]]:
    """Instantiate ``sem`` for ``invocation`` and add the frame condition.

    Matched formals are bound positionally (receiver to the first collection
    formal, k-th argument to the k-th value formal).  Unmatched formals range
    over every context symbol of their sort, but only within the formula or
    template they occur in.  Returns the formula over ``P`` and ``P'`` and the
    set of predicates the operation may touch.
    """
    universe = tuple(preds)
    in_universe = set(universe)
    if len(invocation.arguments) > len(sem.values):
        raise ArityError(f"{invocation.operation} takes at most {len(sem.values)} argument(s), "
                         f"got {len(invocation.arguments)}")
    binding = {sem.collections[0]: invocation.receiver}
    binding.update(zip(sem.values, invocation.arguments))
    for formal, actual in binding.items():
        expected = "collection" if formal in sem.collections else "value"
        if actual not in ctx:
            raise UnknownSymbol(f"symbol {actual!r} is not in the context {ctx}")
        if ctx.sort_of(actual) != expected:
            raise ArityError(f"{invocation.operation}: {actual!r} is not a {expected}")
    for const in sem.constants:
        if const not in ctx:
            raise UnknownSymbol(f"constant {const!r} required by {sem.operation} is not in the context")
    free_colls = [c for c in sem.collections if c not in binding]
    free_vals = [v for v in sem.values if v not in binding]

    def mappings(symbols_used: set[str]):
        fc = [c for c in free_colls if c in symbols_used]
        fv = [v for v in free_vals if v in symbols_used]
        choices = [sorted(ctx.collections)] * len(fc) + [sorted(ctx.values)] * len(fv)
        for combo in itertools.product(*choices):
            m = dict(binding)
            m.update(zip(fc + fv, combo))
            yield m

    formula_symbols = {a for k in variables(sem.formula) for a in _pred_of(k).args}
    instances = []
    for m in mappings(formula_symbols):
        inst = _substitute(sem.formula, m)
        stray = {_pred_of(k) for k in variables(inst)} - in_universe
        if stray:
            raise CollFsmError(f"{sem.operation}/{sem.collection_kind} mentions predicates outside the "
                               f"universe: {', '.join(map(str, sorted(stray)))}")
        instances.append(inst)

    touched: set[Predicate] = set()
    for template in sem.affected:
        for m in mappings(set(template.args)):
            p = template.rename(m)
            if p is not True and p in in_universe:
                touched.add(p)

    frame = [iff(Var(Primed(p)), Var(p)) for p in universe if p not in touched]
    return conj(*instances, *frame), frozenset(touched)


def _substitute(f: Formula, mapping: Mapping[str, str]) -> Formula:
    def sub(key):
        primed = isinstance(key, Primed)
        p = _pred_of(key).rename(mapping)
        if p is True:
            return TRUE
        return Var(Primed(p) if primed else p)

    return map_vars(f, sub)
