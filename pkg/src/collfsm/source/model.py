"""Data model of a parsed API unit: fields, constructor, methods and the
numbered statement trees of their bodies."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union


# ---------------------------------------------------------------------------
# Conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValueEq:
    """``a == b``; also used for ``a.equals(b)`` and collection identity."""
    left: str
    right: str


@dataclass(frozen=True)
class ValueNeq:
    left: str
    right: str


@dataclass(frozen=True)
class Contains:
    collection: str
    value: str


@dataclass(frozen=True)
class IsEmpty:
    collection: str


@dataclass(frozen=True)
class CondConst:
    value: bool


@dataclass(frozen=True)
class CondNot:
    arg: ConditionExpr


@dataclass(frozen=True)
class CondAnd:
    left: ConditionExpr
    right: ConditionExpr


@dataclass(frozen=True)
class CondOr:
    left: ConditionExpr
    right: ConditionExpr


ConditionExpr = Union[ValueEq, ValueNeq, Contains, IsEmpty, CondConst, CondNot, CondAnd, CondOr]


def condition_symbols(expr: ConditionExpr) -> Iterator[str]:
    if isinstance(expr, (ValueEq, ValueNeq)):
        yield expr.left
        yield expr.right
    elif isinstance(expr, Contains):
        yield expr.collection
        yield expr.value
    elif isinstance(expr, IsEmpty):
        yield expr.collection
    elif isinstance(expr, CondNot):
        yield from condition_symbols(expr.arg)
    elif isinstance(expr, (CondAnd, CondOr)):
        yield from condition_symbols(expr.left)
        yield from condition_symbols(expr.right)


# ---------------------------------------------------------------------------
# Statements
# ---------------------------------------------------------------------------

CONSTRUCT = "construct"


@dataclass(frozen=True)
class PlainOp:
    """``receiver.operation(arguments)`` or, for ``construct``,
    ``receiver = new Kind<>()``."""
    receiver: str
    operation: str
    arguments: tuple[str, ...]
    index: int
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Block:
    """A statement sequence."""
    children: tuple[Statement, ...] = ()


@dataclass(frozen=True)
class IfElse:
    condition: ConditionExpr
    then: Block
    orelse: Block
    index: int
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class While:
    condition: ConditionExpr
    body: Block
    index: int
    line: int = field(default=0, compare=False)


Statement = Union[PlainOp, IfElse, While]
StatementTree = Block


def last_index(node: Statement | Block, entry: int = 0) -> int:
    """Index of the last operator of ``node``; ``entry`` for an empty block."""
    if isinstance(node, Block):
        return node.children[-1].index if node.children else entry
    return node.index


def iter_nodes(node: Statement | Block) -> Iterator[Statement]:
    """All numbered nodes, in index order."""
    if isinstance(node, Block):
        for child in node.children:
            yield from iter_nodes(child)
    elif isinstance(node, PlainOp):
        yield node
    elif isinstance(node, IfElse):
        yield from iter_nodes(node.then)
        yield from iter_nodes(node.orelse)
        yield node
    else:
        yield from iter_nodes(node.body)
        yield node


def operator_count(node: Statement | Block) -> int:
    return sum(1 for _ in iter_nodes(node))


def shift_indices(node, k: int):
    if isinstance(node, Block):
        return Block(tuple(shift_indices(c, k) for c in node.children))
    if isinstance(node, PlainOp):
        return PlainOp(node.receiver, node.operation, node.arguments, node.index + k, node.line)
    if isinstance(node, IfElse):
        return IfElse(node.condition, shift_indices(node.then, k), shift_indices(node.orelse, k),
                      node.index + k, node.line)
    return While(node.condition, shift_indices(node.body, k), node.index + k, node.line)


def statement_symbols(node: Statement | Block) -> Iterator[str]:
    for n in iter_nodes(node):
        if isinstance(n, PlainOp):
            yield n.receiver
            yield from n.arguments
        else:
            yield from condition_symbols(n.condition)


# ---------------------------------------------------------------------------
# Units
# ---------------------------------------------------------------------------

def is_literal(symbol: str) -> bool:
    """Literal constants are interned under their source spelling."""
    return symbol == "null" or symbol.startswith('"') or symbol[:1].isdigit() or symbol[:1] == "-"


@dataclass(frozen=True)
class MethodModel:
    name: str
    parameters: tuple[str, ...]
    body: Block
    line: int = field(default=0, compare=False)

    @property
    def last(self) -> int:
        return last_index(self.body, 0)

    def literals(self) -> list[str]:
        seen: dict[str, None] = {}
        for s in statement_symbols(self.body):
            if is_literal(s):
                seen.setdefault(s)
        return list(seen)


@dataclass(frozen=True)
class ApiUnitModel:
    name: str
    fields: tuple[tuple[str, str], ...]
    constructor: MethodModel
    methods: tuple[MethodModel, ...]

    @property
    def field_kinds(self) -> dict[str, str]:
        return dict(self.fields)

    def method(self, name: str) -> MethodModel:
        for m in self.methods:
            if m.name == name:
                return m
        if name == self.constructor.name:
            return self.constructor
        raise KeyError(name)

    def literals(self) -> list[str]:
        seen: dict[str, None] = {}
        for m in (self.constructor, *self.methods):
            for lit in m.literals():
                seen.setdefault(lit)
        return list(seen)

    def operations(self) -> set[tuple[str, str]]:
        """(operation, collection kind) pairs used anywhere in the unit."""
        kinds = self.field_kinds
        used = set()
        for m in (self.constructor, *self.methods):
            for n in iter_nodes(m.body):
                if isinstance(n, PlainOp):
                    used.add((n.operation, kinds[n.receiver]))
        return used
