"""Canonical JSON form of an :class:`Fsm`.

::

    {"states": [{"id": "s0", "valuation": {}}, ...], "initial": "s0",
     "alphabet": [...],
     "transitions": [{"from": "s1", "method": "add",
                      "guard_dnf": [[{"pred": "eq(a,b)", "value": true}, ...], ...],
                      "to": "s2"}]}
"""

from __future__ import annotations

import json

from ..errors import ConfigError
from ..extract import AbstractState, Fsm, Transition
from ..guards import Guard
from ..predicates import parse_predicate


def fsm_to_data(fsm: Fsm) -> dict:
    return {
        "states": [{"id": sid, "valuation": {str(p): v for p, v in s.valuation}}
                   for sid, s in fsm.states],
        "initial": fsm.initial,
        "alphabet": list(fsm.alphabet),
        "transitions": [
            {"from": t.source, "method": t.method,
             "guard_dnf": [[{"pred": str(p), "value": v} for p, v in zip(t.guard.predicates, row)]
                           for row in t.guard.rows],
             "to": t.target}
            for t in fsm.transitions
        ],
    }


def emit_json(fsm: Fsm) -> str:
    return json.dumps(fsm_to_data(fsm), ensure_ascii=False, separators=(",", ":"))


def _guard(dnf, where: str) -> Guard:
    if not dnf:
        raise ConfigError("transitions never carry a false guard", where)
    preds = tuple(parse_predicate(lit["pred"]) for lit in dnf[0])
    rows = []
    for n, conj in enumerate(dnf):
        names = tuple(parse_predicate(lit["pred"]) for lit in conj)
        if names != preds:
            raise ConfigError("guard conjuncts must list the same predicates in the same order",
                              f"{where}[{n}]")
        rows.append(tuple(bool(lit["value"]) for lit in conj))
    return Guard(preds, tuple(rows))


def fsm_from_data(data: dict, source: str = "<json>") -> Fsm:
    try:
        states = tuple((s["id"], AbstractState(tuple((parse_predicate(k), bool(v))
                                                     for k, v in s["valuation"].items())))
                       for s in data["states"])
        transitions = tuple(Transition(t["from"], t["method"],
                                       _guard(t["guard_dnf"], f"{source}:transitions[{n}].guard_dnf"),
                                       t["to"])
                            for n, t in enumerate(data["transitions"]))
        fsm = Fsm(states, data["initial"], tuple(data["alphabet"]), transitions)
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"malformed FSM document ({exc.__class__.__name__}: {exc})", source) from exc
    ids = {sid for sid, _ in states}
    if fsm.initial not in ids:
        raise ConfigError(f"initial state {fsm.initial!r} is not declared", source)
    for t in transitions:
        if t.source not in ids or t.target not in ids or t.method not in fsm.alphabet:
            raise ConfigError(f"transition {t.source} -{t.method}-> {t.target} references "
                              "an undeclared state or method", source)
    return fsm


def parse_json(text: str, source: str = "<json>") -> Fsm:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}: {exc.msg}", source) from exc
    return fsm_from_data(data, source)
