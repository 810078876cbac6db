"""Recursive-descent parser for the supported Java subset.

Operators are numbered per method in source order; an ``if`` or ``while``
receives its number when its closing brace is reached, so a branching node
always carries a larger index than anything inside it.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from ..errors import ConfigError, FormatError, ParseError, UnsupportedError
from .lexer import Token, TokenKind as K, tokenize
from .model import (CONSTRUCT, ApiUnitModel, Block, CondAnd, CondConst, CondNot, CondOr,
                    ConditionExpr, Contains, IfElse, IsEmpty, MethodModel, PlainOp, ValueEq,
                    ValueNeq, While, shift_indices)

DEFAULT_KINDS = ("HashSet", "LinkedHashSet", "TreeSet")
DEFAULT_OPERATIONS = ("add", "remove", "clear")
INTERFACE_TYPES = frozenset({
    "Set", "SortedSet", "NavigableSet", "SequencedSet", "Collection", "AbstractSet", "Iterable",
})
_QUERY_METHODS = frozenset({"contains", "isEmpty", "equals"})


def parse_unit(tokens: list[Token], kinds: Iterable[str] = DEFAULT_KINDS,
               operations: Iterable[str] = DEFAULT_OPERATIONS,
               kind_overrides: Mapping[str, str] | None = None) -> ApiUnitModel:
    return _Parser(tokens, kinds, operations, kind_overrides or {}).unit()


def parse_source(text: str, **kwargs) -> ApiUnitModel:
    return parse_unit(tokenize(text), **kwargs)


class _Parser:
    def __init__(self, tokens, kinds, operations, overrides):
        self.toks = tokens
        self.k = 0
        self.kinds = tuple(kinds)
        self.operations = frozenset(operations)
        self.overrides = dict(overrides)
        self.class_name = ""
        self.fields: dict[str, str | None] = {}     # name -> declared concrete kind
        self.field_names: set[str] = set()
        self.field_lines: dict[str, int] = {}
        self.constructed: dict[str, set[str]] = {}
        self.params: tuple[str, ...] = ()
        self.counter = 0
        self.op_lines: set[int] = set()
        self.closer_lines: set[int] = set()

    # -- token helpers ------------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.k + ahead, len(self.toks) - 1)]

    def at(self, *kinds: K) -> bool:
        return self.peek().kind in kinds

    def take(self, kind: K | None = None, what: str | None = None) -> Token:
        tok = self.peek()
        if kind is not None and tok.kind is not kind:
            raise ParseError(f"expected {what or kind.value}, found {tok.text or tok.kind.value!r}",
                             tok.line, tok.column)
        self.k += 1
        return tok

    def unsupported(self, tok: Token, msg: str):
        return UnsupportedError(msg, tok.line, tok.column)

    # -- unit level -----------------------------------------------------------

    def unit(self) -> ApiUnitModel:
        while self.at(K.KW_PACKAGE, K.KW_IMPORT):
            while not self.at(K.SEMI, K.EOF):
                self.take()
            self.take(K.SEMI)
        self.skip_annotations()
        while self.at(K.KW_MODIFIER):
            self.take()
        if self.at(K.KW_INTERFACE):
            raise self.unsupported(self.peek(), "interfaces carry no implementation to analyse")
        self.take(K.KW_CLASS, "'class'")
        self.class_name = self.take(K.IDENT, "class name").text
        if self.at(K.LT):
            self.skip_type_args()
        if self.at(K.KW_EXTENDS):
            self.take()
            self.parse_type()
        if self.at(K.KW_IMPLEMENTS):
            self.take()
            self.parse_type()
            while self.at(K.COMMA):
                self.take()
                self.parse_type()
        self.take(K.LBRACE)
        self.prescan_fields()

        constructors: list[MethodModel] = []
        methods: list[MethodModel] = []
        initializers: list[PlainOp] = []
        while not self.at(K.RBRACE):
            if self.at(K.EOF):
                raise ParseError("unexpected end of input inside class body", self.peek().line)
            self.member(constructors, methods, initializers)
        self.take(K.RBRACE)
        if not self.at(K.EOF):
            tok = self.peek()
            raise self.unsupported(tok, "only one top-level class per source file is supported")

        if len(constructors) > 1:
            raise UnsupportedError("overloaded constructors are not supported", constructors[1].line)
        ctor = constructors[0] if constructors else MethodModel(self.class_name, (), Block())
        if initializers:
            ctor = MethodModel(ctor.name, ctor.parameters,
                               Block(tuple(initializers) + shift_indices(ctor.body, len(initializers)).children),
                               ctor.line)
        seen = set()
        for m in methods:
            if m.name in seen:
                raise UnsupportedError(f"overloaded method {m.name!r} is not supported", m.line)
            seen.add(m.name)
        return ApiUnitModel(self.class_name, self.resolve_kinds(), ctor, tuple(methods))

    def prescan_fields(self) -> None:
        """Collect field names up front; Java lets methods use fields declared below them."""
        depth = 1
        for i in range(self.k, len(self.toks) - 1):
            tok = self.toks[i]
            if tok.kind is K.LBRACE:
                depth += 1
            elif tok.kind is K.RBRACE:
                depth -= 1
                if depth == 0:
                    return
            elif (depth == 1 and tok.kind is K.IDENT and i > 0
                  and self.toks[i - 1].kind in (K.IDENT, K.GT)
                  and self.toks[i + 1].kind in (K.SEMI, K.ASSIGN)):
                self.field_names.add(tok.text)

    def resolve_kinds(self) -> tuple[tuple[str, str], ...]:
        for name in self.overrides:
            if name not in self.fields:
                raise ConfigError(f"collection kind override for unknown field {name!r}")
        out = []
        for name, declared in self.fields.items():
            line = self.field_lines[name]
            built = self.constructed.get(name, set())
            if name in self.overrides:
                kind = self.overrides[name]
                if kind not in self.kinds:
                    raise ConfigError(f"unsupported collection kind {kind!r} for field {name!r}")
            elif declared is not None:
                if built - {declared}:
                    raise ParseError(f"field {name!r} declared as {declared} but constructed as "
                                     f"{', '.join(sorted(built - {declared}))}", line)
                kind = declared
            elif len(built) == 1:
                kind = next(iter(built))
            elif built:
                raise UnsupportedError(f"field {name!r} is constructed with several kinds: "
                                       f"{', '.join(sorted(built))}", line)
            else:
                raise ParseError(f"cannot determine the collection kind of field {name!r}", line)
            out.append((name, kind))
        return tuple(out)

    def skip_annotations(self) -> None:
        while self.at(K.AT):
            self.take()
            self.take(K.IDENT, "annotation name")
            if self.at(K.LPAREN):
                depth = 0
                while True:
                    tok = self.take()
                    if tok.kind is K.LPAREN:
                        depth += 1
                    elif tok.kind is K.RPAREN:
                        depth -= 1
                        if depth == 0:
                            break
                    elif tok.kind is K.EOF:
                        raise ParseError("unterminated annotation", tok.line)

    def skip_type_args(self) -> None:
        depth = 0
        while True:
            tok = self.take()
            if tok.kind is K.LT:
                depth += 1
            elif tok.kind is K.GT:
                depth -= 1
                if depth == 0:
                    return
            elif tok.kind in (K.EOF, K.SEMI, K.LBRACE):
                raise ParseError("unterminated type argument list", tok.line, tok.column)

    def parse_type(self) -> str:
        tok = self.take(K.IDENT, "type name")
        name = tok.text
        while self.at(K.DOT) and self.peek(1).kind is K.IDENT:
            self.take()
            name = self.take().text
        if self.at(K.LT):
            self.skip_type_args()
        while self.at(K.LBRACKET):
            self.take()
            self.take(K.RBRACKET)
            name += "[]"
        return name

    def member(self, constructors, methods, initializers) -> None:
        self.skip_annotations()
        while self.at(K.KW_MODIFIER):
            self.take()
        tok = self.peek()
        if tok.kind is K.IDENT and tok.text == self.class_name and self.peek(1).kind is K.LPAREN:
            self.take()
            constructors.append(self.method_rest(tok.text, tok.line))
            return
        if tok.kind is K.KW_VOID:
            self.take()
            name = self.take(K.IDENT, "method name")
            methods.append(self.method_rest(name.text, name.line))
            return
        if tok.kind is not K.IDENT:
            raise self.unsupported(tok, f"unsupported class member starting with {tok.text!r}")
        type_name = self.parse_type()
        name = self.take(K.IDENT, "member name")
        if self.at(K.LPAREN):
            raise self.unsupported(name, f"method {name.text!r} returns a value; only void methods are supported")
        self.field(type_name, name, initializers)

    def field(self, type_name: str, name: Token, initializers: list[PlainOp]) -> None:
        if type_name in self.kinds:
            declared = type_name
        elif type_name in INTERFACE_TYPES:
            declared = None
        else:
            raise self.unsupported(name, f"field {name.text!r} of type {type_name} is not a supported collection")
        if name.text in self.fields:
            raise ParseError(f"duplicate field {name.text!r}", name.line, name.column)
        self.fields[name.text] = declared
        self.field_lines[name.text] = name.line
        if self.at(K.ASSIGN):
            self.take()
            kind = self.new_expression()
            self.constructed.setdefault(name.text, set()).add(kind)
            initializers.append(PlainOp(name.text, CONSTRUCT, (), len(initializers) + 1, name.line))
        self.take(K.SEMI, "';'")

    def method_rest(self, name: str, line: int) -> MethodModel:
        self.take(K.LPAREN)
        params: list[str] = []
        if not self.at(K.RPAREN):
            while True:
                while self.at(K.KW_MODIFIER):
                    self.take()
                self.skip_annotations()
                type_tok = self.peek()
                type_name = self.parse_type()
                if type_name in self.kinds or type_name in INTERFACE_TYPES:
                    raise self.unsupported(type_tok, "collection-typed parameters are not supported")
                p = self.take(K.IDENT, "parameter name")
                if p.text in self.field_names:
                    raise ParseError(f"parameter {p.text!r} shadows a field", p.line, p.column)
                if p.text in params:
                    raise ParseError(f"duplicate parameter {p.text!r}", p.line, p.column)
                params.append(p.text)
                if not self.at(K.COMMA):
                    break
                self.take()
        self.take(K.RPAREN)
        if self.at(K.IDENT) and self.peek().text == "throws":
            raise self.unsupported(self.peek(), "throws clauses are not supported")
        self.params = tuple(params)
        self.counter = 0
        self.take(K.LBRACE, "'{'")
        body = self.block_body()
        self.take(K.RBRACE)
        return MethodModel(name, tuple(params), body, line)

    # -- statements -------------------------------------------------------------

    def next_index(self) -> int:
        self.counter += 1
        return self.counter

    def start_operator(self, tok: Token) -> None:
        if tok.line in self.op_lines:
            raise FormatError("more than one operator on a line", tok.line, tok.column)
        if tok.line in self.closer_lines:
            raise FormatError("closing brace of a branching statement shares its line with an operator",
                              tok.line, tok.column)
        self.op_lines.add(tok.line)

    def block_body(self) -> Block:
        children = []
        while not self.at(K.RBRACE):
            if self.at(K.EOF):
                raise ParseError("unexpected end of input inside a block", self.peek().line)
            children.append(self.statement())
        return Block(tuple(children))

    def branch_block(self, owner: Token) -> Block:
        if not self.at(K.LBRACE):
            tok = self.peek()
            raise FormatError(f"'{owner.text}' branch must be enclosed in braces", tok.line, tok.column)
        self.take()
        body = self.block_body()
        closer = self.take(K.RBRACE)
        if closer.line in self.op_lines:
            raise FormatError("closing brace of a branching statement shares its line with an operator",
                              closer.line, closer.column)
        self.closer_lines.add(closer.line)
        return body

    def statement(self):
        tok = self.peek()
        if tok.kind is K.KW_IF:
            self.start_operator(tok)
            self.take()
            cond = self.paren_condition()
            then = self.branch_block(tok)
            orelse = Block()
            if self.at(K.KW_ELSE):
                else_tok = self.take()
                if self.at(K.KW_IF):
                    raise self.unsupported(self.peek(), "'else if' chains are not supported; "
                                                        "nest the 'if' inside an 'else' block")
                orelse = self.branch_block(else_tok)
            return IfElse(cond, then, orelse, self.next_index(), tok.line)
        if tok.kind is K.KW_WHILE:
            self.start_operator(tok)
            self.take()
            cond = self.paren_condition()
            body = self.branch_block(tok)
            return While(cond, body, self.next_index(), tok.line)
        if tok.kind is K.KW_UNSUPPORTED:
            raise self.unsupported(tok, f"'{tok.text}' statements are not supported")
        if tok.kind is K.LBRACE:
            raise self.unsupported(tok, "nested blocks are not supported")
        if tok.kind is K.SEMI:
            raise self.unsupported(tok, "empty statements are not supported")
        if tok.kind is K.KW_ELSE:
            raise ParseError("'else' without 'if'", tok.line, tok.column)
        if tok.kind in (K.IDENT, K.KW_THIS):
            return self.operation_statement()
        raise ParseError(f"unexpected {tok.text or tok.kind.value!r}", tok.line, tok.column)

    def operation_statement(self) -> PlainOp:
        first = self.peek()
        if first.kind is K.IDENT and self.peek(1).kind in (K.IDENT, K.LT):
            raise self.unsupported(first, "local variable declarations are not supported")
        self.start_operator(first)
        target = self.symbol_ref()
        if target not in self.field_names:
            if target in self.params:
                raise self.unsupported(first, f"operations on parameter {target!r} are not supported")
            raise ParseError(f"unknown symbol {target!r}", first.line, first.column)
        if self.at(K.ASSIGN):
            self.take()
            kind = self.new_expression()
            self.take(K.SEMI, "';'")
            self.constructed.setdefault(target, set()).add(kind)
            return PlainOp(target, CONSTRUCT, (), self.next_index(), first.line)
        self.take(K.DOT, "'.' or '='")
        name = self.take(K.IDENT, "method name")
        if name.text not in self.operations:
            what = "query" if name.text in _QUERY_METHODS else "operation"
            raise self.unsupported(name, f"{what} {name.text!r} is not supported as a statement")
        self.take(K.LPAREN)
        args = []
        if not self.at(K.RPAREN):
            args.append(self.value_operand())
            while self.at(K.COMMA):
                self.take()
                args.append(self.value_operand())
        self.take(K.RPAREN)
        self.take(K.SEMI, "';'")
        return PlainOp(target, name.text, tuple(args), self.next_index(), first.line)

    def new_expression(self) -> str:
        self.take(K.KW_NEW, "'new'")
        cls = self.take(K.IDENT, "collection class")
        if cls.text not in self.kinds:
            raise self.unsupported(cls, f"collection class {cls.text!r} is not supported")
        if self.at(K.LT):
            self.skip_type_args()
        self.take(K.LPAREN)
        if not self.at(K.RPAREN):
            raise self.unsupported(self.peek(), "constructor arguments are not supported")
        self.take(K.RPAREN)
        return cls.text

    def symbol_ref(self) -> str:
        if self.at(K.KW_THIS):
            self.take()
            self.take(K.DOT)
            name = self.take(K.IDENT, "field name")
            if name.text not in self.field_names:
                raise ParseError(f"unknown field {name.text!r}", name.line, name.column)
            return name.text
        return self.take(K.IDENT, "identifier").text

    def literal(self) -> str | None:
        tok = self.peek()
        if tok.kind in (K.KW_NULL, K.STRING, K.NUMBER):
            self.take()
            return tok.text
        if tok.kind is K.OTHER_OP and tok.text == "-" and self.peek(1).kind is K.NUMBER:
            self.take()
            return "-" + self.take().text
        return None

    def value_operand(self) -> str:
        lit = self.literal()
        if lit is not None:
            return lit
        tok = self.peek()
        if tok.kind not in (K.IDENT, K.KW_THIS):
            raise self.unsupported(tok, f"unsupported argument {tok.text!r}")
        name = self.symbol_ref()
        if self.at(K.LPAREN, K.DOT):
            raise self.unsupported(self.peek(), "nested method calls are not supported")
        if name in self.field_names:
            raise self.unsupported(tok, f"collection {name!r} cannot be used as a value")
        if name not in self.params:
            raise ParseError(f"unknown symbol {name!r}", tok.line, tok.column)
        return name

    # -- conditions -----------------------------------------------------------

    def paren_condition(self) -> ConditionExpr:
        self.take(K.LPAREN, "'('")
        cond = self.cond_or()
        self.take(K.RPAREN, "')'")
        return cond

    def cond_or(self) -> ConditionExpr:
        left = self.cond_and()
        while self.at(K.OR):
            self.take()
            left = CondOr(left, self.cond_and())
        return left

    def cond_and(self) -> ConditionExpr:
        left = self.cond_unary()
        while self.at(K.AND):
            self.take()
            left = CondAnd(left, self.cond_unary())
        return left

    def cond_unary(self) -> ConditionExpr:
        if self.at(K.NOT):
            self.take()
            return CondNot(self.cond_unary())
        return self.cond_primary()

    def cond_primary(self) -> ConditionExpr:
        tok = self.peek()
        if tok.kind is K.LPAREN:
            self.take()
            inner = self.cond_or()
            self.take(K.RPAREN, "')'")
            return inner
        if tok.kind in (K.KW_TRUE, K.KW_FALSE):
            self.take()
            return CondConst(tok.kind is K.KW_TRUE)
        left = self.literal()
        if left is None:
            if tok.kind not in (K.IDENT, K.KW_THIS):
                raise self.unsupported(tok, f"unsupported condition term {tok.text!r}")
            left = self.symbol_ref()
            self.check_known(left, tok)
            if self.at(K.DOT):
                return self.query(left, tok)
            if self.at(K.LPAREN):
                raise self.unsupported(tok, "method calls other than contains/isEmpty/equals are not supported")
        op = self.peek()
        if op.kind not in (K.EQ, K.NEQ):
            raise self.unsupported(op, "conditions may only compare values or query contains()/isEmpty()")
        self.take()
        rtok = self.peek()
        right = self.literal()
        if right is None:
            right = self.symbol_ref()
            self.check_known(right, rtok)
            if self.at(K.DOT, K.LPAREN):
                raise self.unsupported(self.peek(), "nested method calls are not supported")
        if (left in self.field_names) != (right in self.field_names):
            raise ParseError("cannot compare a collection with a value", op.line, op.column)
        return ValueEq(left, right) if op.kind is K.EQ else ValueNeq(left, right)

    def query(self, receiver: str, tok: Token) -> ConditionExpr:
        self.take(K.DOT)
        name = self.take(K.IDENT, "method name")
        self.take(K.LPAREN)
        if name.text == "isEmpty":
            self.take(K.RPAREN, "')'")
            if receiver not in self.field_names:
                raise ParseError(f"isEmpty() on non-collection {receiver!r}", tok.line, tok.column)
            return IsEmpty(receiver)
        if name.text in ("contains", "equals"):
            arg = self.value_operand()
            self.take(K.RPAREN, "')'")
            if name.text == "contains":
                if receiver not in self.field_names:
                    raise ParseError(f"contains() on non-collection {receiver!r}", tok.line, tok.column)
                return Contains(receiver, arg)
            if receiver in self.field_names:
                raise self.unsupported(name, "equals() on collections is not supported")
            return ValueEq(receiver, arg)
        raise self.unsupported(name, f"method {name.text!r} is not allowed in conditions")

    def check_known(self, name: str, tok: Token) -> None:
        if name not in self.field_names and name not in self.params:
            raise ParseError(f"unknown symbol {name!r}", tok.line, tok.column)
