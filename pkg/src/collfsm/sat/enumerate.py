"""Solving and projected model enumeration over a :class:`CnfInstance`."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping

from .cdcl import Solver
from .cnf import CnfInstance

PROJECTION = "projection"
FULL_TRACE = "full-trace"
BLOCKING_MODES = (PROJECTION, FULL_TRACE)

SolverFactory = Callable[[CnfInstance], object]


def embedded(inst: CnfInstance) -> Solver:
    return Solver(inst.num_vars, inst.clauses)


@dataclass(frozen=True)
class Model:
    """Total assignment over the original variables of an instance."""
    values: Mapping[Hashable, bool]

    def projection(self, view: Iterable[Hashable]) -> dict[Hashable, bool]:
        return {k: self.values[k] for k in view}

    def __getitem__(self, key: Hashable) -> bool:
        return self.values[key]


def _literals(inst: CnfInstance, assumptions: Mapping[Hashable, bool]) -> list[int]:
    out = []
    for key, val in assumptions.items():
        if key not in inst.var_of:
            raise KeyError(f"unknown variable {key}")
        v = inst.var_of[key]
        out.append(v if val else -v)
    return out


def _model_of(inst: CnfInstance, raw: list[bool]) -> Model:
    return Model({key: raw[v] for key, v in inst.var_of.items()})


def solve(inst: CnfInstance, assumptions: Mapping[Hashable, bool] | None = None,
          solver_factory: SolverFactory = embedded) -> Model | None:
    solver = solver_factory(inst)
    if solver.solve(_literals(inst, assumptions or {})):
        return _model_of(inst, solver.model)
    return None


@dataclass
class Enumeration:
    assignments: list[dict[Hashable, bool]]
    solver_calls: int


def enumerate_models(inst: CnfInstance, assumptions: Mapping[Hashable, bool] | None = None,
                     projection: Iterable[Hashable] = (), mode: str = PROJECTION,
                     solver_factory: SolverFactory = embedded,
                     block_on: Iterable[Hashable] | None = None) -> Enumeration:
    """All distinct projections of models, in discovery order.

    In projection mode each model is blocked on the projection variables.
    In full-trace mode it is blocked on ``block_on`` (all trace variables by
    default), which may revisit the same projection several times.
    """
    if mode not in BLOCKING_MODES:
        raise ValueError(f"unknown blocking mode {mode!r}")
    view = list(projection)
    for key in view:
        if key not in inst.var_of:
            raise KeyError(f"projection variable {key} is not an original variable")
    if mode == PROJECTION:
        blockers = view
    else:
        blockers = list(block_on) if block_on is not None else sorted(inst.var_of, key=inst.var_of.get)
    solver = solver_factory(inst)
    lits = _literals(inst, assumptions or {})
    seen: set[tuple] = set()
    found: list[dict[Hashable, bool]] = []
    calls = 0
    while True:
        calls += 1
        if not solver.solve(lits):
            break
        model = solver.model
        proj = {k: model[inst.var_of[k]] for k in view}
        sig = tuple(proj[k] for k in view)
        if sig not in seen:
            seen.add(sig)
            found.append(proj)
        block = [-inst.var_of[k] if model[inst.var_of[k]] else inst.var_of[k] for k in blockers]
        if not block or not solver.add_clause(block):
            break
    return Enumeration(found, calls)
