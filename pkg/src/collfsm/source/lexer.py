"""Tokenizer for the Java-like source subset."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from ..errors import FormatError, LexError


class TokenKind(Enum):
    IDENT = "identifier"
    STRING = "string literal"
    NUMBER = "number"
    LBRACE = "{"
    RBRACE = "}"
    LPAREN = "("
    RPAREN = ")"
    LT = "<"
    GT = ">"
    SEMI = ";"
    DOT = "."
    COMMA = ","
    AT = "@"
    ASSIGN = "="
    EQ = "=="
    NEQ = "!="
    NOT = "!"
    AND = "&&"
    OR = "||"
    LBRACKET = "["
    RBRACKET = "]"
    OTHER_OP = "operator"
    KW_CLASS = "class"
    KW_INTERFACE = "interface"
    KW_EXTENDS = "extends"
    KW_IMPLEMENTS = "implements"
    KW_PACKAGE = "package"
    KW_IMPORT = "import"
    KW_MODIFIER = "modifier"
    KW_VOID = "void"
    KW_NEW = "new"
    KW_IF = "if"
    KW_ELSE = "else"
    KW_WHILE = "while"
    KW_THIS = "this"
    KW_NULL = "null"
    KW_TRUE = "true"
    KW_FALSE = "false"
    KW_UNSUPPORTED = "unsupported keyword"
    EOF = "end of input"


_KEYWORDS = {
    "class": TokenKind.KW_CLASS,
    "interface": TokenKind.KW_INTERFACE,
    "extends": TokenKind.KW_EXTENDS,
    "implements": TokenKind.KW_IMPLEMENTS,
    "package": TokenKind.KW_PACKAGE,
    "import": TokenKind.KW_IMPORT,
    "void": TokenKind.KW_VOID,
    "new": TokenKind.KW_NEW,
    "if": TokenKind.KW_IF,
    "else": TokenKind.KW_ELSE,
    "while": TokenKind.KW_WHILE,
    "this": TokenKind.KW_THIS,
    "null": TokenKind.KW_NULL,
    "true": TokenKind.KW_TRUE,
    "false": TokenKind.KW_FALSE,
}
for _m in ("public", "private", "protected", "final", "static", "abstract", "synchronized"):
    _KEYWORDS[_m] = TokenKind.KW_MODIFIER
for _u in ("for", "do", "switch", "case", "return", "try", "catch", "finally", "throw",
           "break", "continue", "var", "assert", "enum", "record", "instanceof"):
    _KEYWORDS[_u] = TokenKind.KW_UNSUPPORTED

_PUNCT = {
    "==": TokenKind.EQ, "!=": TokenKind.NEQ, "&&": TokenKind.AND, "||": TokenKind.OR,
    "{": TokenKind.LBRACE, "}": TokenKind.RBRACE, "(": TokenKind.LPAREN, ")": TokenKind.RPAREN,
    "<": TokenKind.LT, ">": TokenKind.GT, ";": TokenKind.SEMI, ".": TokenKind.DOT,
    ",": TokenKind.COMMA, "@": TokenKind.AT, "=": TokenKind.ASSIGN, "!": TokenKind.NOT,
    "[": TokenKind.LBRACKET, "]": TokenKind.RBRACKET,
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f]+)
  | (?P<nl>\n)
  | (?P<line_comment>//[^\n]*)
  | (?P<block_comment>/\*.*?\*/)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<number>\d+(?:\.\d+)?[lLfFdD]?)
  | (?P<ident>[A-Za-z_$][A-Za-z_$0-9]*)
  | (?P<punct>==|!=|&&|\|\||\+\+|--|\+=|-=|<=|>=|[{}()<>;.,@=!\[\]+\-*/%?:&|^~])
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int

    def __repr__(self) -> str:
        return f"{self.kind.name}({self.text!r})@{self.line}:{self.column}"


def tokenize(source_text: str) -> list[Token]:
    """Split ``source_text`` into tokens carrying 1-based line/column numbers.

    Lines holding more than one statement terminator are rejected here
    already, since one operator per line is a layout requirement of the
    numbering scheme.
    """
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    n = len(source_text)
    while pos < n:
        if source_text.startswith("/*", pos) and source_text.find("*/", pos + 2) < 0:
            raise LexError("unterminated comment", line, pos - line_start + 1)
        m = _TOKEN_RE.match(source_text, pos)
        if m is None:
            raise LexError(f"unrecognized character {source_text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "block_comment":
            nls = text.count("\n")
            if nls:
                line += nls
                line_start = pos + text.rfind("\n") + 1
        elif kind == "string":
            tokens.append(Token(TokenKind.STRING, text, line, col))
        elif kind == "number":
            tokens.append(Token(TokenKind.NUMBER, text, line, col))
        elif kind == "ident":
            tokens.append(Token(_KEYWORDS.get(text, TokenKind.IDENT), text, line, col))
        elif kind == "punct":
            tokens.append(Token(_PUNCT.get(text, TokenKind.OTHER_OP), text, line, col))
        pos = m.end()
    tokens.append(Token(TokenKind.EOF, "", line, 1))
    _check_one_terminator_per_line(tokens)
    return tokens


def _check_one_terminator_per_line(tokens: list[Token]) -> None:
    by_line: dict[int, list[Token]] = {}
    for t in tokens:
        by_line.setdefault(t.line, []).append(t)
    for line, toks in by_line.items():
        if any(t.text == "for" for t in toks):
            continue  # rejected by the parser with a better message
        semis = [t for t in toks if t.kind is TokenKind.SEMI]
        if len(semis) > 1:
            raise FormatError("more than one operator on a line", line, semis[1].column)
