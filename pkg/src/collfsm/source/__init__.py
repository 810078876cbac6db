"""Front end: tokenizer, parser and data model of the Java-like source subset."""

from .conditions import lower_condition
from .lexer import Token, TokenKind, tokenize
from .model import (ApiUnitModel, Block, IfElse, MethodModel, PlainOp, StatementTree, While,
                    last_index)
from .parser import DEFAULT_KINDS, DEFAULT_OPERATIONS, parse_source, parse_unit
from .printer import format_unit

__all__ = [
    "ApiUnitModel", "Block", "DEFAULT_KINDS", "DEFAULT_OPERATIONS", "IfElse", "MethodModel",
    "PlainOp", "StatementTree", "Token", "TokenKind", "While", "format_unit", "last_index",
    "lower_condition", "parse_source", "parse_unit", "tokenize",
]
