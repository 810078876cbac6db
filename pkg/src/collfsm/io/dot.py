"""Graphviz rendering of an :class:`Fsm`."""

from __future__ import annotations

from ..extract import Fsm
from ..guards import guard_text, simplify_guard


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def edge_label(method: str, guard, use_care: bool = True) -> str:
    """``method [guard]``; the guard is left out when it always holds in the
    source state."""
    if guard.is_unconditional() if use_care else guard.is_valid():
        return method
    return f"{method} [{guard_text(simplify_guard(guard, use_care))}]"


def emit_dot(fsm: Fsm, name: str = "fsm", use_care: bool = True) -> str:
    lines = [f"digraph {_quote(name)} {{", "    rankdir=LR;"]
    for sid, state in fsm.states:
        shape = "doublecircle" if sid == fsm.initial else "ellipse"
        lines.append(f"    {sid} [label={_quote(state.label())}, shape={shape}];")
    for t in fsm.transitions:
        lines.append(f"    {t.source} -> {t.target} [label={_quote(edge_label(t.method, t.guard, use_care))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
