"""Render an :class:`ApiUnitModel` back to source that re-parses to the same model."""

from __future__ import annotations

from .model import (CONSTRUCT, ApiUnitModel, Block, CondAnd, CondConst, CondNot, CondOr, Contains,
                    IfElse, IsEmpty, MethodModel, PlainOp, ValueEq, ValueNeq)

_INDENT = "    "


def format_unit(unit: ApiUnitModel) -> str:
    kinds = unit.field_kinds
    lines = [f"class {unit.name} {{"]
    for name, kind in unit.fields:
        lines.append(f"{_INDENT}private {kind}<Object> {name};")
    lines.append("")
    lines.extend(_method(unit.constructor, kinds, header=f"public {unit.name}"))
    for m in unit.methods:
        lines.append("")
        lines.extend(_method(m, kinds, header=f"public void {m.name}"))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _method(m: MethodModel, kinds, header: str) -> list[str]:
    params = ", ".join(f"Object {p}" for p in m.parameters)
    out = [f"{_INDENT}{header}({params}) {{"]
    out.extend(_block(m.body, kinds, 2))
    out.append(f"{_INDENT}}}")
    return out


def _block(block: Block, kinds, depth: int) -> list[str]:
    pad = _INDENT * depth
    out: list[str] = []
    for s in block.children:
        if isinstance(s, PlainOp):
            if s.operation == CONSTRUCT:
                out.append(f"{pad}{s.receiver} = new {kinds[s.receiver]}<>();")
            else:
                out.append(f"{pad}{s.receiver}.{s.operation}({', '.join(s.arguments)});")
        elif isinstance(s, IfElse):
            out.append(f"{pad}if ({format_condition(s.condition)}) {{")
            out.extend(_block(s.then, kinds, depth + 1))
            out.append(f"{pad}}} else {{")
            out.extend(_block(s.orelse, kinds, depth + 1))
            out.append(f"{pad}}}")
        else:
            out.append(f"{pad}while ({format_condition(s.condition)}) {{")
            out.extend(_block(s.body, kinds, depth + 1))
            out.append(f"{pad}}}")
    return out


def format_condition(c) -> str:
    if isinstance(c, ValueEq):
        return f"{c.left} == {c.right}"
    if isinstance(c, ValueNeq):
        return f"{c.left} != {c.right}"
    if isinstance(c, Contains):
        return f"{c.collection}.contains({c.value})"
    if isinstance(c, IsEmpty):
        return f"{c.collection}.isEmpty()"
    if isinstance(c, CondConst):
        return "true" if c.value else "false"
    if isinstance(c, CondNot):
        return f"!({format_condition(c.arg)})"
    op = "&&" if isinstance(c, CondAnd) else "||"
    assert isinstance(c, (CondAnd, CondOr))
    return f"({format_condition(c.left)} {op} {format_condition(c.right)})"
