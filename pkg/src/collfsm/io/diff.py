"""Behavioural comparison of two FSMs.

States are matched by their valuation text and transitions by endpoints,
method and semantic guard equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import IncomparableModels
from ..extract import Fsm, Transition
from ..guards import guard_text, simplify_guard


@dataclass(frozen=True)
class EdgeView:
    source: str
    method: str
    guard: str
    target: str

    def __str__(self) -> str:
        return f"{self.source} --{self.method} [{self.guard}]--> {self.target}"


@dataclass
class DiffReport:
    only_in_a: list[EdgeView] = field(default_factory=list)
    only_in_b: list[EdgeView] = field(default_factory=list)
    states_only_in_a: list[str] = field(default_factory=list)
    states_only_in_b: list[str] = field(default_factory=list)
    predicates_only_in_a: list[str] = field(default_factory=list)
    predicates_only_in_b: list[str] = field(default_factory=list)
    methods_only_in_a: list[str] = field(default_factory=list)
    methods_only_in_b: list[str] = field(default_factory=list)

    @property
    def changed(self) -> bool:
        return bool(self.only_in_a or self.only_in_b or self.states_only_in_a or self.states_only_in_b)

    def render(self, name_a: str = "A", name_b: str = "B") -> str:
        if not self.changed:
            return "no behavioural difference\n"
        out = ["behaviour changed"]
        sections = [
            (f"predicates only in {name_a}", self.predicates_only_in_a),
            (f"predicates only in {name_b}", self.predicates_only_in_b),
            (f"methods only in {name_a}", self.methods_only_in_a),
            (f"methods only in {name_b}", self.methods_only_in_b),
            (f"states only in {name_a}", self.states_only_in_a),
            (f"states only in {name_b}", self.states_only_in_b),
            (f"transitions only in {name_a}", self.only_in_a),
            (f"transitions only in {name_b}", self.only_in_b),
        ]
        for title, items in sections:
            if items:
                out.append(f"{title}:")
                out.extend(f"  {item}" for item in items)
        return "\n".join(out) + "\n"


def _predicates(fsm: Fsm) -> set[str]:
    return {str(p) for _, s in fsm.states for p in s.domain}


def _view(fsm: Fsm, t: Transition) -> EdgeView:
    return EdgeView(fsm.state(t.source).label(), t.method, guard_text(simplify_guard(t.guard)),
                    fsm.state(t.target).label())


def _unmatched(a: Fsm, b: Fsm) -> list[EdgeView]:
    index: dict[tuple[str, str, str], list[Transition]] = {}
    for t in b.transitions:
        key = (b.state(t.source).label(), t.method, b.state(t.target).label())
        index.setdefault(key, []).append(t)
    out = []
    for t in a.transitions:
        key = (a.state(t.source).label(), t.method, a.state(t.target).label())
        if not any(t.guard.equivalent(u.guard) for u in index.get(key, [])):
            out.append(_view(a, t))
    return out


def diff_fsm(a: Fsm, b: Fsm) -> DiffReport:
    if not set(a.alphabet) & set(b.alphabet):
        raise IncomparableModels("the two models share no method names")
    la = [s.label() for _, s in a.states]
    lb = [s.label() for _, s in b.states]
    pa, pb = _predicates(a), _predicates(b)
    return DiffReport(
        only_in_a=_unmatched(a, b),
        only_in_b=_unmatched(b, a),
        states_only_in_a=[x for x in la if x not in set(lb)],
        states_only_in_b=[x for x in lb if x not in set(la)],
        predicates_only_in_a=sorted(pa - pb),
        predicates_only_in_b=sorted(pb - pa),
        methods_only_in_a=[m for m in a.alphabet if m not in b.alphabet],
        methods_only_in_b=[m for m in b.alphabet if m not in a.alphabet],
    )
