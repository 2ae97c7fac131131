"""Tokenizer and recursive-descent parser with line/column diagnostics.

Grammar (JavaScript-like)::

    stmt  := 'let' ID '=' expr ';' | ID '=' expr ';' | 'return' expr ';'
           | 'if' '(' cond ')' body ['else' body] | 'while' '(' cond ')' body
    body  := stmt | '{' stmt* '}'
    cond  := '!' cond | expr [REL INT]
    expr  := sum ['?' expr ':' expr]
    sum   := post ('+' post)*
    post  := atom ('.' METHOD '(' args ')')*
    atom  := STRING | ID | 'unknown' '(' ')' | 'T' | '(' cond-or-expr ')'

``unknown()`` (also written ``T``) stands for an arbitrary string.  Integer
arguments are literals; ``indexOf`` results may only be compared.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .ast import (
    INT_METHODS,
    METHOD_ARITY,
    Assign,
    Call,
    Cmp,
    Concat,
    If,
    IntLit,
    Let,
    Not,
    Program,
    Return,
    StrLit,
    Ternary,
    Truthy,
    Unknown,
    Var,
    While,
)

KEYWORDS = {"let", "if", "else", "while", "return", "unknown", "T"}
RELS = ("==", "!=", "<=", ">=", "<", ">")


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # ID, STR, INT, OP, EOF
    text: str
    value: object
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<lcomment>//[^\n]*)
  | (?P<bcomment>/\*.*?\*/)
  | (?P<str>'(?:[^'\\\n]|\\.)*'|"(?:[^"\\\n]|\\.)*")
  | (?P<int>-?\d+)
  | (?P<id>[A-Za-z_$][A-Za-z0-9_$]*)
  | (?P<op>==|!=|<=|>=|[<>!=+?:;(){}.,]|⊤)
""", re.VERBOSE | re.DOTALL)

_ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", "'": "'", '"': '"'}


def _unescape(body: str, line: int, col: int) -> str:
    out, i = [], 0
    while i < len(body):
        c = body[i]
        if c == "\\":
            if i + 1 >= len(body) or body[i + 1] not in _ESCAPES:
                raise ParseError("unknown escape in string literal", line, col + i + 1)
            out.append(_ESCAPES[body[i + 1]])
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def tokenize(text: str) -> list[Token]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "str":
            toks.append(Token("STR", chunk, _unescape(chunk[1:-1], line, col), line, col))
        elif kind == "int":
            toks.append(Token("INT", chunk, int(chunk), line, col))
        elif kind == "id":
            toks.append(Token("ID", chunk, chunk, line, col))
        elif kind == "op":
            toks.append(Token("OP", "T" if chunk == "⊤" else chunk, None, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    toks.append(Token("EOF", "", None, line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.scopes: list[set[str]] = [set()]

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        t = self.tok
        return (t.kind == "OP" or t.kind == "ID") and t.text == text

    def error(self, message: str, tok: Optional[Token] = None):
        t = tok or self.tok
        raise ParseError(message, t.line, t.col)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> Token:
        t = self.tok
        if t.kind != "ID" or t.text in KEYWORDS:
            self.error(f"expected an identifier, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    # -- scopes

    def defined(self, name: str) -> bool:
        return any(name in s for s in self.scopes)

    def use(self, tok: Token) -> None:
        if not self.defined(tok.text):
            self.error(f"variable {tok.text!r} used before definition", tok)

    # -- statements

    def program(self) -> tuple:
        out = []
        while self.tok.kind != "EOF":
            out.append(self.stmt())
        return tuple(out)

    def block(self) -> tuple:
        if self.at("{"):
            self.expect("{")
            self.scopes.append(set())
            out = []
            while not self.at("}"):
                if self.tok.kind == "EOF":
                    self.error("unterminated block")
                out.append(self.stmt())
            self.expect("}")
            self.scopes.pop()
            return tuple(out)
        self.scopes.append(set())
        s = self.stmt()
        self.scopes.pop()
        return (s,)

    def stmt(self):
        t = self.tok
        if self.at("let"):
            self.i += 1
            name = self.ident()
            self.expect("=")
            e = self.expr()
            self.expect(";")
            self.scopes[-1].add(name.text)
            return Let(name.text, e, t.line)
        if self.at("if"):
            self.i += 1
            self.expect("(")
            c = self.cond()
            self.expect(")")
            then = self.block()
            other = None
            if self.at("else"):
                self.i += 1
                other = self.block()
            return If(c, then, other, t.line)
        if self.at("while"):
            self.i += 1
            self.expect("(")
            c = self.cond()
            self.expect(")")
            return While(c, self.block(), t.line)
        if self.at("return"):
            self.i += 1
            e = self.expr()
            self.expect(";")
            return Return(e, t.line)
        if t.kind == "ID" and t.text not in KEYWORDS and self.peek().text == "=":
            self.i += 1
            self.use(t)
            self.expect("=")
            e = self.expr()
            self.expect(";")
            return Assign(t.text, e, t.line)
        self.error(f"expected a statement, found {t.text or 'end of input'!r}")

    # -- conditions and expressions

    def cond(self, negated: bool = False):
        if self.at("!"):
            self.i += 1
            return Not(self.cond(negated=True))
        start = self.tok
        # `!x ? a : b` negates x, not the conditional
        e = self.expr(allow_index=True, allow_ternary=not negated)
        if self.tok.kind == "OP" and self.tok.text in RELS:
            rel = self.tok.text
            self.i += 1
            if not (isinstance(e, Call) and e.method == "indexOf"):
                self.error("only indexOf results can be compared", start)
            k = self.tok
            if k.kind != "INT":
                self.error("expected an integer literal")
            self.i += 1
            return Cmp(e, rel, k.value)
        if isinstance(e, Call) and e.method == "indexOf":
            self.error("indexOf result must be compared with an integer", start)
        return Truthy(e)

    def expr(self, allow_index: bool = False, allow_ternary: bool = True):
        start = self.tok
        e = self.sum()
        if allow_ternary and self.at("?"):
            self._no_index(e, start, "must be compared with an integer")
            self.i += 1
            return self.ternary_tail(Truthy(e))
        if not allow_index:
            self._no_index(e, start, "must be compared with an integer")
        return e

    def ternary_tail(self, c):
        a = self.expr()
        self.expect(":")
        return Ternary(c, a, self.expr())

    def _no_index(self, e, tok: Token, why: str) -> None:
        if isinstance(e, Call) and e.method == "indexOf":
            self.error(f"indexOf result {why}", tok)

    def sum(self):
        start = self.tok
        e = self.post()
        while self.at("+"):
            self._no_index(e, start, "is an integer and cannot be concatenated")
            self.i += 1
            t = self.tok
            r = self.post()
            self._no_index(r, t, "is an integer and cannot be concatenated")
            e = Concat(e, r)
        return e

    def post(self):
        start = self.tok
        e = self.atom()
        while self.at("."):
            self.i += 1
            mt = self.ident()
            if mt.text not in METHOD_ARITY:
                self.error(f"unknown method {mt.text!r}", mt)
            self._no_index(e, start, "is an integer and has no methods")
            self.expect("(")
            args = []
            while not self.at(")"):
                if args:
                    self.expect(",")
                if mt.text in INT_METHODS:
                    k = self.tok
                    if k.kind != "INT":
                        self.error(f"{mt.text} takes an integer literal")
                    self.i += 1
                    args.append(IntLit(k.value))
                else:
                    args.append(self.expr())
            close = self.expect(")")
            if len(args) != METHOD_ARITY[mt.text]:
                self.error(f"{mt.text} takes {METHOD_ARITY[mt.text]} argument(s), got {len(args)}", close)
            e = Call(e, mt.text, tuple(args))
        return e

    def atom(self):
        t = self.tok
        if t.kind == "STR":
            self.i += 1
            return StrLit(t.value)
        if self.at("unknown"):
            self.i += 1
            self.expect("(")
            self.expect(")")
            return Unknown()
        if self.at("T"):
            self.i += 1
            return Unknown()
        if self.at("("):
            self.i += 1
            c = self.cond()
            if self.at("?"):
                # a parenthesized conditional such as (x.indexOf(y) == 0 ? a : b)
                self.i += 1
                e = self.ternary_tail(c)
                self.expect(")")
                return e
            self.expect(")")
            if isinstance(c, Truthy):
                return c.expr
            if not self.at("?"):
                self.error("a condition is only allowed before '?'", t)
            self.i += 1
            return self.ternary_tail(c)
        if t.kind == "ID" and t.text not in KEYWORDS:
            self.i += 1
            self.use(t)
            return Var(t.text)
        self.error(f"expected an expression, found {t.text or 'end of input'!r}")


def parse_program(text: str) -> Program:
    p = _Parser(text)
    return Program(p.program(), text)
