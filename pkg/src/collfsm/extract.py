"""State spaces, guarded transitions and FSM assembly."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .encoder import Encoder
from .errors import ConfigError
from .guards import Guard
from .logic import Formula
from .predicates import (EXC_PRED, Context, IndexedVariable, Predicate, build_context,
                         common_context, index_formula, instantiate_axioms, parse_predicate,
                         predicate_universe, split_predicates)
from .sat import PROJECTION, CnfInstance, embedded, enumerate_models, to_cnf
from .semantics import DEFAULT_CATALOG, Catalog
from .source.model import ApiUnitModel, Block, MethodModel

# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbstractState:
    """Partial valuation of state predicates; the empty one is the initial state."""
    valuation: tuple[tuple[Predicate, bool], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "valuation", tuple(sorted(dict(self.valuation).items())))

    @classmethod
    def of(cls, mapping: Mapping[Predicate, bool]) -> AbstractState:
        return cls(tuple(mapping.items()))

    @property
    def domain(self) -> frozenset[Predicate]:
        return frozenset(p for p, _ in self.valuation)

    def as_dict(self) -> dict[Predicate, bool]:
        return dict(self.valuation)

    @property
    def is_initial(self) -> bool:
        return not self.valuation

    def refines(self, other: AbstractState) -> bool:
        mine = self.as_dict()
        return all(p in mine and mine[p] == v for p, v in other.valuation)

    def label(self) -> str:
        if not self.valuation:
            return "init"
        return " ".join(str(p) if v else f"!{p}" for p, v in self.valuation)


INITIAL = AbstractState()
ALL_CONCRETE = "all-concrete"
CUSTOM = "custom"


@dataclass(frozen=True)
class StateSpace:
    states: tuple[AbstractState, ...]
    mode: str = ALL_CONCRETE

    @property
    def concrete(self) -> tuple[AbstractState, ...]:
        return tuple(s for s in self.states if not s.is_initial)


def _as_predicate(p) -> Predicate:
    if isinstance(p, Predicate):
        return p
    try:
        return parse_predicate(p)
    except ValueError as exc:
        raise ConfigError(str(exc), "state_predicates") from exc


def state_space(p_st: Iterable[Predicate], choice: Iterable | None = None) -> StateSpace:
    """The initial state plus every total valuation over ``choice``."""
    p_st = tuple(sorted(set(p_st)))
    if choice is None:
        chosen = p_st
    else:
        chosen = tuple(sorted({_as_predicate(p) for p in choice}))
        stray = [str(p) for p in chosen if p not in p_st]
        if stray:
            raise ConfigError(f"not state predicates: {', '.join(stray)}", "state_predicates")
    states = [INITIAL]
    if not chosen:
        return StateSpace(tuple(states), ALL_CONCRETE)
    for bits in itertools.product((True, False), repeat=len(chosen)):
        states.append(AbstractState(tuple(zip(chosen, bits))))
    return StateSpace(tuple(states), ALL_CONCRETE)


def custom_state_space(p_st: Iterable[Predicate], valuations: Iterable[Mapping]) -> StateSpace:
    """User-chosen partial states; they must not refine each other and must
    cover every total valuation over the predicates they mention."""
    p_st = set(p_st)
    states: list[AbstractState] = []
    for n, raw in enumerate(valuations):
        mapping = {_as_predicate(k): bool(v) for k, v in raw.items()}
        stray = [str(p) for p in mapping if p not in p_st]
        if stray:
            raise ConfigError(f"not state predicates: {', '.join(stray)}", f"states[{n}]")
        if not mapping:
            raise ConfigError("the empty valuation is the implicit initial state", f"states[{n}]")
        states.append(AbstractState.of(mapping))
    for a, b in itertools.combinations(states, 2):
        if a.refines(b) or b.refines(a):
            raise ConfigError(f"states {a.label()!r} and {b.label()!r} refine each other", "states")
    mentioned = sorted({p for s in states for p in s.domain})
    for bits in itertools.product((True, False), repeat=len(mentioned)):
        total = AbstractState(tuple(zip(mentioned, bits)))
        if not any(total.refines(s) for s in states):
            raise ConfigError(f"state set is incomplete: {total.label()!r} refines no state", "states")
    return StateSpace((INITIAL, *states), CUSTOM)


# ---------------------------------------------------------------------------
# Per-method analysis
# ---------------------------------------------------------------------------


@dataclass
class MethodAnalysis:
    """Encoding of one method, shared by all of its transition tasks."""
    meth: MethodModel
    ctx: Context
    predicates: tuple[Predicate, ...]
    formula: Formula
    last: int
    cnf: CnfInstance
    is_constructor: bool = False

    @property
    def p_st(self) -> tuple[Predicate, ...]:
        return split_predicates(self.ctx, self.predicates)[0]

    @property
    def p_nd(self) -> tuple[Predicate, ...]:
        return split_predicates(self.ctx, self.predicates)[1]

    @property
    def num_trace_vars(self) -> int:
        return len(self.predicates) * (self.last + 1)

    def trace_keys(self) -> list[IndexedVariable]:
        return [IndexedVariable(p, i) for i in range(self.last + 1) for p in self.predicates]

    def pins(self, src: AbstractState, dst: AbstractState) -> dict[IndexedVariable, bool] | None:
        """Assumptions fixing entry and exit state, or None when they clash on
        a state predicate this method's encoding does not track."""
        out: dict[IndexedVariable, bool] = {}
        known = set(self.predicates)
        if self.is_constructor:
            if EXC_PRED in known:
                out[IndexedVariable(EXC_PRED, 0)] = False
        else:
            for p, v in src.valuation:
                if p in known:
                    out[IndexedVariable(p, 0)] = v
        end = self.last
        for p, v in dst.valuation:
            if p in known:
                key = IndexedVariable(p, end)
                if out.get(key, v) != v:
                    return None
                out[key] = v
        if not self.is_constructor:
            before, after = src.as_dict(), dst.as_dict()
            for p in set(before) & set(after):
                if p not in known and before[p] != after[p]:
                    return None
        return out

    def entry_view(self) -> list[IndexedVariable]:
        return [IndexedVariable(p, 0) for p in self.p_nd]


def analyse_method(unit: ApiUnitModel, meth: MethodModel, catalog: Catalog = DEFAULT_CATALOG,
                   context: str | Sequence[str] | None = "auto",
                   is_constructor: bool = False) -> MethodAnalysis:
    forced = catalog.forced_constants(unit)
    ctx = build_context(unit, meth, context, forced)
    preds = predicate_universe(ctx, include_exc=catalog.uses_exc(unit))
    enc = Encoder(ctx, preds, unit.field_kinds, catalog)
    formula, last = enc.method(meth)
    register = [IndexedVariable(p, i) for i in sorted({0, last}) for p in preds]
    cnf = to_cnf(formula, register)
    return MethodAnalysis(meth, ctx, preds, formula, last, cnf, is_constructor)


def unit_state_predicates(unit: ApiUnitModel, catalog: Catalog = DEFAULT_CATALOG) -> tuple[Predicate, ...]:
    """State predicates shared by every method of ``unit``."""
    ctx = common_context(unit, catalog.forced_constants(unit))
    return split_predicates(ctx, predicate_universe(ctx, catalog.uses_exc(unit)))[0]


# ---------------------------------------------------------------------------
# Transitions
# ---------------------------------------------------------------------------


def admissible_rows(analysis: MethodAnalysis, src: AbstractState,
                    solver_factory=embedded) -> list[dict]:
    """P_nd valuations at entry that are consistent with ``src`` and the axioms."""
    axioms = index_formula(instantiate_axioms(analysis.ctx, analysis.predicates), 0)
    pins = analysis.pins(src, INITIAL) or {}
    inst = to_cnf(axioms, [IndexedVariable(p, 0) for p in analysis.predicates])
    view = analysis.entry_view()
    found = enumerate_models(inst, pins, view, PROJECTION, solver_factory).assignments
    return [{k.pred: v for k, v in row.items()} for row in found]


@dataclass
class TransitionResult:
    guard: Guard
    solver_calls: int = 0


def compute_transition(analysis: MethodAnalysis, src: AbstractState, dst: AbstractState,
                       mode: str = PROJECTION, solver_factory=embedded,
                       with_care: bool = True) -> TransitionResult:
    """Guard of ``src --meth--> dst``: the DNF of all entry valuations of the
    indeterminacy predicates under which the pinned encoding is satisfiable."""
    p_nd = analysis.p_nd
    pins = analysis.pins(src, dst)
    if pins is None:
        return TransitionResult(Guard.false(p_nd), 0)
    view = analysis.entry_view()
    res = enumerate_models(analysis.cnf, pins, view, mode, solver_factory,
                           block_on=analysis.trace_keys())
    rows = [{k.pred: v for k, v in a.items()} for a in res.assignments]
    care = admissible_rows(analysis, src, solver_factory) if with_care else None
    return TransitionResult(Guard.from_assignments(p_nd, rows, care), res.solver_calls)


# ---------------------------------------------------------------------------
# FSM
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Transition:
    source: str
    method: str
    guard: Guard
    target: str


@dataclass(frozen=True)
class Fsm:
    states: tuple[tuple[str, AbstractState], ...]
    initial: str
    alphabet: tuple[str, ...]
    transitions: tuple[Transition, ...]

    def state(self, sid: str) -> AbstractState:
        return dict(self.states)[sid]

    def state_id(self, state: AbstractState) -> str:
        for sid, s in self.states:
            if s == state:
                return sid
        raise KeyError(state.label())

    def outgoing(self, sid: str, method: str | None = None) -> list[Transition]:
        return [t for t in self.transitions
                if t.source == sid and (method is None or t.method == method)]

    def reachable(self) -> set[str]:
        seen = {self.initial}
        todo = [self.initial]
        while todo:
            s = todo.pop()
            for t in self.outgoing(s):
                if t.target not in seen:
                    seen.add(t.target)
                    todo.append(t.target)
        return seen


@dataclass
class ExtractionOptions:
    state_predicates: Sequence | None = None
    states: Sequence[Mapping] | None = None
    contexts: Mapping[str, str | Sequence[str]] = field(default_factory=dict)
    blocking: str = PROJECTION
    solver_factory: Callable = embedded
    prune_unreachable: bool = False
    catalog: Catalog = DEFAULT_CATALOG


GuardFn = Callable[[MethodAnalysis, AbstractState, AbstractState], Guard]


def build_fsm(space: StateSpace, alphabet: Sequence[str],
              edges: Iterable[tuple[AbstractState, str, Guard, AbstractState]],
              prune_unreachable: bool = False) -> Fsm:
    order = {s: n for n, s in enumerate(space.states)}
    ids = {s: f"s{n}" for s, n in order.items()}
    trans = [(order[a], m, order[b], Transition(ids[a], m, g, ids[b]))
             for a, m, g, b in edges if not g.is_false]
    trans.sort(key=lambda t: t[:3])
    fsm = Fsm(tuple((ids[s], s) for s in space.states), ids[INITIAL], tuple(sorted(alphabet)),
              tuple(t[3] for t in trans))
    if not prune_unreachable:
        return fsm
    keep = fsm.reachable()
    kept = StateSpace(tuple(s for s in space.states if ids[s] in keep), space.mode)
    edges = [(fsm.state(t.source), t.method, t.guard, fsm.state(t.target))
             for t in fsm.transitions if t.source in keep]
    return build_fsm(kept, alphabet, edges)


def extract_fsm(unit: ApiUnitModel, options: ExtractionOptions | None = None,
                guard_fn: GuardFn | None = None) -> Fsm:
    """Guarded non-deterministic FSM of ``unit``.

    The constructor leaves the initial state; every API method is evaluated
    between every pair of non-initial states.  ``guard_fn`` replaces the SAT
    based guard computation (the brute-force oracle uses this).
    """
    opts = options or ExtractionOptions()
    catalog = opts.catalog
    p_st = unit_state_predicates(unit, catalog)
    if opts.states is not None:
        space = custom_state_space(p_st, opts.states)
    else:
        space = state_space(p_st, opts.state_predicates)
    if guard_fn is None:
        def guard_fn(an, a, b):
            return compute_transition(an, a, b, opts.blocking, opts.solver_factory).guard

    def context_for(m: MethodModel):
        return opts.contexts.get(m.name, "auto")

    edges = []
    ctor = analyse_method(unit, unit.constructor, catalog, context_for(unit.constructor), True)
    for dst in space.concrete:
        edges.append((INITIAL, unit.constructor.name, guard_fn(ctor, INITIAL, dst), dst))
    for meth in unit.methods:
        an = analyse_method(unit, meth, catalog, context_for(meth))
        for src in space.concrete:
            for dst in space.concrete:
                edges.append((src, meth.name, guard_fn(an, src, dst), dst))
    alphabet = [unit.constructor.name, *(m.name for m in unit.methods)]
    return build_fsm(space, alphabet, edges, opts.prune_unreachable)


def empty_method(name: str, parameters: Sequence[str] = ()) -> MethodModel:
    return MethodModel(name, tuple(parameters), Block(()))
