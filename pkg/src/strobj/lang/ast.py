"""Syntax tree of the mini string language."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

METHOD_ARITY = {"charAt": 1, "substring": 1, "indexOf": 1, "replace": 2}
INT_METHODS = {"charAt", "substring"}


# expressions


@dataclass(frozen=True)
class StrLit:
    value: str


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unknown:
    pass


@dataclass(frozen=True)
class Concat:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    recv: "Expr"
    method: str
    args: tuple


@dataclass(frozen=True)
class Ternary:
    cond: "Cond"
    then: "Expr"
    other: "Expr"


Expr = Union[StrLit, Var, Unknown, Concat, Call, Ternary]


# conditions


@dataclass(frozen=True)
class Truthy:
    expr: Expr


@dataclass(frozen=True)
class Not:
    cond: "Cond"


@dataclass(frozen=True)
class Cmp:
    call: Call  # always an indexOf call
    rel: str
    k: int


Cond = Union[Truthy, Not, Cmp]


# statements


@dataclass(frozen=True)
class Let:
    name: str
    expr: Expr
    line: int


@dataclass(frozen=True)
class Assign:
    name: str
    expr: Expr
    line: int


@dataclass(frozen=True)
class If:
    cond: Cond
    then: tuple
    other: Optional[tuple]
    line: int


@dataclass(frozen=True)
class While:
    cond: Cond
    body: tuple
    line: int


@dataclass(frozen=True)
class Return:
    expr: Expr
    line: int


Stmt = Union[Let, Assign, If, While, Return]


@dataclass(frozen=True)
class Program:
    body: tuple
    source: str = ""
