"""Reference interpreter over actual strings, used to test the analyzer's soundness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from ..ops import c_char_at, c_index_of, c_replace, c_substring, holds
from .ast import Assign, Call, Cmp, Concat, If, Let, Not, Program, Return, StrLit, Ternary, Truthy, Unknown, Var, While


class LoopLimit(RuntimeError):
    pass


@dataclass
class ConcreteRun:
    env: dict = field(default_factory=dict)  # variables visible at the end
    returned: Optional[str] = None
    return_line: Optional[int] = None


class _Return(Exception):
    def __init__(self, value: str, line: int):
        self.value = value
        self.line = line


def run_concrete(program: Program, unknown: Callable[[], str], max_steps: int = 10_000) -> ConcreteRun:
    """Execute ``program``; each ``unknown()`` draws a word from ``unknown``."""
    run = ConcreteRun()
    steps = [0]

    def ev(e, env):
        if isinstance(e, StrLit):
            return e.value
        if isinstance(e, Var):
            return env[e.name]
        if isinstance(e, Unknown):
            return unknown()
        if isinstance(e, Concat):
            return ev(e.left, env) + ev(e.right, env)
        if isinstance(e, Ternary):
            return ev(e.then, env) if cond(e.cond, env) else ev(e.other, env)
        if isinstance(e, Call):
            r = ev(e.recv, env)
            if e.method == "charAt":
                return c_char_at(r, e.args[0].value)
            if e.method == "substring":
                return c_substring(r, e.args[0].value)
            if e.method == "replace":
                return c_replace(r, ev(e.args[0], env), ev(e.args[1], env))
            raise ValueError(f"{e.method} does not produce a string")
        raise TypeError(f"not an expression: {e!r}")

    def cond(c, env) -> bool:
        if isinstance(c, Not):
            return not cond(c.cond, env)
        if isinstance(c, Truthy):
            return ev(c.expr, env) != ""
        if isinstance(c, Cmp):
            return holds(c_index_of(ev(c.call.recv, env), ev(c.call.args[0], env)), c.rel, c.k)
        raise TypeError(f"not a condition: {c!r}")

    def block(stmts, env):
        local = dict(env)
        for s in stmts:
            stmt(s, local)
        for k in env:
            env[k] = local[k]

    def stmt(s, env):
        steps[0] += 1
        if steps[0] > max_steps:
            raise LoopLimit("step limit reached")
        if isinstance(s, (Let, Assign)):
            env[s.name] = ev(s.expr, env)
        elif isinstance(s, If):
            if cond(s.cond, env):
                block(s.then, env)
            elif s.other is not None:
                block(s.other, env)
        elif isinstance(s, While):
            while cond(s.cond, env):
                block(s.body, env)
                steps[0] += 1
                if steps[0] > max_steps:
                    raise LoopLimit("step limit reached")
        elif isinstance(s, Return):
            raise _Return(ev(s.expr, env), s.line)

    env: dict = {}
    try:
        for s in program.body:
            stmt(s, env)
    except _Return as r:
        run.returned, run.return_line = r.value, r.line
    run.env = env
    return run
