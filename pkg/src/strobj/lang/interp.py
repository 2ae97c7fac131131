"""Forward abstract interpreter over string objects.

A state is a dict from variable name to object, or ``None`` when the program
point is unreachable.  Conditionals refine both branches through the assume
transformers and join at the merge; loops iterate from the head with delayed
widening until the head stabilizes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..context import DEFAULT_CTX, Ctx
from ..morphism import StandardMorphism
from ..objects import (
    BOTTOM_OBJECT,
    StringObject,
    close_universe,
    constant_object,
    eps_object,
    make_object,
    object_join,
    object_leq,
    widen_object,
)
from ..ops import (
    NEGATED,
    abs_char_at,
    abs_concat,
    abs_replace,
    abs_substring,
    assume_falsy,
    assume_index_cmp,
    assume_truthy,
    int_exact,
)
from ..serialize import format_object, object_to_json
from .ast import Assign, Call, Cmp, Concat, If, Let, Not, Program, Return, StrLit, Ternary, Truthy, Unknown, Var, While

MAX_LOOP_ITERATIONS = 200

State = Optional[dict]


class AnalysisDiagnostic(ValueError):
    """The program cannot be analyzed under the given settings (e.g. a literal outside the alphabet)."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class UnreachableLine:
    line: int


@dataclass(frozen=True)
class LoopExitUnreachable:
    line: int


@dataclass(frozen=True)
class ProvenNonEmpty:
    name: str
    line: int


@dataclass
class LineSnapshot:
    line: int
    reachable: bool
    env: dict  # name -> StringObject, joined over every visit


@dataclass
class AnalysisReport:
    lines: list  # LineSnapshot, sorted by line
    verdicts: list
    returns: dict = field(default_factory=dict)  # line -> joined returned object

    def snapshot(self, line: int) -> LineSnapshot:
        for s in self.lines:
            if s.line == line:
                return s
        raise KeyError(line)

    def env_at(self, line: int) -> dict:
        return self.snapshot(line).env

    def unreachable_lines(self) -> list[int]:
        return [v.line for v in self.verdicts if isinstance(v, UnreachableLine)]


# ---------------------------------------------------------------- states


def join_states(a: State, b: State, ctx: Ctx) -> State:
    if a is None:
        return b
    if b is None:
        return a
    return {k: object_join(a[k], b[k], ctx) for k in a if k in b}


def _widen_states(prev: State, nxt: State, exhausted: bool, ctx: Ctx) -> State:
    if prev is None or nxt is None:
        return nxt if prev is None else prev
    return {k: widen_object(prev[k], nxt[k], exhausted, ctx) for k in prev if k in nxt}


def _leq_states(a: State, b: State, ctx: Ctx) -> bool:
    if a is None:
        return True
    if b is None:
        return False
    return all(k in a and object_leq(a[k], b[k], ctx) for k in b)


# ---------------------------------------------------------------- analyzer


class _Analyzer:
    def __init__(self, props: Iterable[StandardMorphism], ctx: Ctx):
        self.ctx = ctx
        self.universe = close_universe(props, ctx)
        self.top = make_object(ctx=ctx, universe=self.universe)
        self.recording = True
        self.lines: dict[int, dict] = {}
        self.reached: set[int] = set()
        self.stmt_lines: set[int] = set()
        self.returns: dict[int, StringObject] = {}
        self.nonempty: dict[tuple, bool] = {}
        self.loop_exits: dict[int, bool] = {}  # line -> exit reachable (head reachable only)

    # -- recording

    def record(self, line: int, state: State) -> None:
        self.stmt_lines.add(line)
        if not self.recording or state is None:
            return
        self.reached.add(line)
        env = self.lines.setdefault(line, {})
        for k, o in state.items():
            env[k] = object_join(env[k], o, self.ctx) if k in env else o

    # -- expressions

    def eval(self, e, st: dict) -> StringObject:
        ctx = self.ctx
        if isinstance(e, StrLit):
            return constant_object(e.value, self.universe)
        if isinstance(e, Var):
            return st[e.name]
        if isinstance(e, Unknown):
            return self.top
        if isinstance(e, Concat):
            return abs_concat(self.eval(e.left, st), self.eval(e.right, st), ctx)
        if isinstance(e, Ternary):
            # branch values are computed in the unrefined state; the guard only decides feasibility
            out = None
            for positive, branch in ((True, e.then), (False, e.other)):
                if self.assume(e.cond, st, positive) is None:
                    continue
                v = self.eval(branch, st)
                out = v if out is None else object_join(out, v, ctx)
            return out if out is not None else BOTTOM_OBJECT
        if isinstance(e, Call):
            recv = self.eval(e.recv, st)
            if e.method == "charAt":
                k = e.args[0].value
                return eps_object(recv.universe) if k < 0 else abs_char_at(recv, int_exact(k), ctx)
            if e.method == "substring":
                k = e.args[0].value
                return recv if k <= 0 else abs_substring(recv, int_exact(k), ctx)
            if e.method == "replace":
                return abs_replace(recv, self.eval(e.args[0], st), self.eval(e.args[1], st), ctx)
        raise TypeError(f"cannot evaluate {e!r} to a string")

    # -- conditions

    def assume(self, c, st: State, positive: bool) -> State:
        """The part of ``st`` where ``c`` evaluates to ``positive``; ``None`` if empty."""
        if st is None:
            return None
        ctx = self.ctx
        if isinstance(c, Not):
            return self.assume(c.cond, st, not positive)
        if isinstance(c, Truthy):
            o = self.eval(c.expr, st)
            r = assume_truthy(o, ctx) if positive else assume_falsy(o, ctx)
            if r.is_bottom:
                return None
            if isinstance(c.expr, Var):
                return {**st, c.expr.name: r}
            return st
        if isinstance(c, Cmp):
            rel = c.rel if positive else NEGATED[c.rel]
            recv, arg = c.call.recv, c.call.args[0]
            o1, o2 = self.eval(recv, st), self.eval(arg, st)
            if o1.is_bottom or o2.is_bottom:
                return None
            r1, r2 = assume_index_cmp(o1, o2, rel, c.k, ctx)
            if r1.is_bottom or r2.is_bottom:
                return None
            out = dict(st)
            if isinstance(recv, Var):
                out[recv.name] = r1
            if isinstance(arg, Var) and not (isinstance(recv, Var) and recv.name == arg.name):
                out[arg.name] = r2
            return out
        raise TypeError(f"not a condition: {c!r}")

    # -- statements

    def block(self, stmts, st: State) -> State:
        outer = None if st is None else set(st)
        for s in stmts:
            st = self.stmt(s, st)
        if st is None or outer is None:
            return st
        return {k: v for k, v in st.items() if k in outer}

    def stmt(self, s, st: State) -> State:
        ctx = self.ctx
        if isinstance(s, (Let, Assign)):
            if st is None:
                self.record(s.line, None)
                return None
            o = self.eval(s.expr, st)
            st = None if o.is_bottom else {**st, s.name: o}
            self.record(s.line, st)
            return st
        if isinstance(s, Return):
            self.record(s.line, st)
            if st is None:
                return None
            o = self.eval(s.expr, st)
            if self.recording and not o.is_bottom:
                prev = self.returns.get(s.line)
                self.returns[s.line] = o if prev is None else object_join(prev, o, ctx)
                if isinstance(s.expr, Var):
                    key = (s.expr.name, s.line)
                    self.nonempty[key] = self.nonempty.get(key, True) and not o.eps
            return None
        if isinstance(s, If):
            self.record(s.line, st)
            then = self.block(s.then, self.assume(s.cond, st, True))
            other = self.assume(s.cond, st, False)
            if s.other is not None:
                other = self.block(s.other, other)
            return join_states(then, other, ctx)
        if isinstance(s, While):
            return self.loop(s, st)
        raise TypeError(f"not a statement: {s!r}")

    def loop(self, s: While, st: State) -> State:
        ctx = self.ctx
        head = st
        recording, self.recording = self.recording, False
        try:
            for i in range(MAX_LOOP_ITERATIONS):
                body = self.block(s.body, self.assume(s.cond, head, True))
                nxt = _widen_states(head, join_states(st, body, ctx), i >= ctx.widen_delay, ctx)
                if _leq_states(nxt, head, ctx):
                    break
                head = nxt
            else:
                raise RuntimeError(f"loop at line {s.line} did not stabilize "
                                   f"within {MAX_LOOP_ITERATIONS} iterations")
        finally:
            self.recording = recording
        # one more pass over the stable head to take the snapshots
        self.record(s.line, head)
        self.block(s.body, self.assume(s.cond, head, True))
        exit_state = self.assume(s.cond, head, False)
        if self.recording and head is not None:
            self.loop_exits[s.line] = self.loop_exits.get(s.line, False) or exit_state is not None
        return exit_state

    def run(self, program: Program) -> AnalysisReport:
        _check_literals(program, self.ctx)
        st: State = {}
        for s in program.body:
            st = self.stmt(s, st)
        snaps = [LineSnapshot(n, n in self.reached, dict(sorted(self.lines.get(n, {}).items())))
                 for n in sorted(self.stmt_lines)]
        verdicts: list = [UnreachableLine(n) for n in sorted(self.stmt_lines) if n not in self.reached]
        verdicts += [LoopExitUnreachable(n) for n, ok in sorted(self.loop_exits.items()) if not ok]
        verdicts += [ProvenNonEmpty(name, n) for (name, n), ok in sorted(self.nonempty.items(), key=lambda kv: (kv[0][1], kv[0][0])) if ok]
        return AnalysisReport(snaps, verdicts, dict(sorted(self.returns.items())))


def _walk_literals(node, line: int):
    if isinstance(node, StrLit):
        yield node.value, line
        return
    if isinstance(node, (Let, Assign, Return)):
        yield from _walk_literals(node.expr, node.line)
    elif isinstance(node, If):
        yield from _walk_literals(node.cond, node.line)
        for s in node.then + (node.other or ()):
            yield from _walk_literals(s, s.line)
    elif isinstance(node, While):
        yield from _walk_literals(node.cond, node.line)
        for s in node.body:
            yield from _walk_literals(s, s.line)
    elif isinstance(node, Concat):
        yield from _walk_literals(node.left, line)
        yield from _walk_literals(node.right, line)
    elif isinstance(node, Ternary):
        for part in (node.cond, node.then, node.other):
            yield from _walk_literals(part, line)
    elif isinstance(node, Call):
        yield from _walk_literals(node.recv, line)
        for a in node.args:
            yield from _walk_literals(a, line)
    elif isinstance(node, (Truthy,)):
        yield from _walk_literals(node.expr, line)
    elif isinstance(node, Not):
        yield from _walk_literals(node.cond, line)
    elif isinstance(node, Cmp):
        yield from _walk_literals(node.call, line)


def _check_literals(program: Program, ctx: Ctx) -> None:
    if ctx.alphabet.is_open:
        return
    for s in program.body:
        for w, line in _walk_literals(s, s.line):
            bad = sorted({c for c in w if c not in ctx.alphabet})
            if bad:
                raise AnalysisDiagnostic(f"literal {w!r} uses letters {''.join(bad)!r} outside the alphabet", line)


def analyze_program(program: Program, props: Iterable[StandardMorphism] = (),
                    ctx: Ctx = DEFAULT_CTX) -> AnalysisReport:
    """Abstractly interpret ``program``; ``props`` are the custom properties tracked for unknown inputs."""
    return _Analyzer(props, ctx).run(program)


# ---------------------------------------------------------------- rendering


def _verdict_json(v) -> dict:
    if isinstance(v, UnreachableLine):
        return {"kind": "unreachable", "line": v.line}
    if isinstance(v, LoopExitUnreachable):
        return {"kind": "loop_exit_unreachable", "line": v.line}
    return {"kind": "proven_nonempty", "id": v.name, "line": v.line}


def report_to_json(r: AnalysisReport) -> dict:
    return {
        "lines": [{"line": s.line, "reachable": s.reachable,
                   "env": {k: object_to_json(o) for k, o in s.env.items()}} for s in r.lines],
        "verdicts": [_verdict_json(v) for v in r.verdicts],
    }


def _verdict_text(v) -> str:
    if isinstance(v, UnreachableLine):
        return f"line {v.line}: unreachable"
    if isinstance(v, LoopExitUnreachable):
        return f"line {v.line}: loop never exits"
    return f"line {v.line}: {v.name} is non-empty"


def render_report(r: AnalysisReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report_to_json(r), sort_keys=True)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    out = []
    for s in r.lines:
        if not s.reachable:
            out.append(f"{s.line:>4}  (unreachable)")
            continue
        out.append(f"{s.line:>4}")
        for k, o in s.env.items():
            out.append(f"      {k} = {format_object(o)}")
    out.append("verdicts:")
    out.extend("  " + _verdict_text(v) for v in r.verdicts)
    if not r.verdicts:
        out.append("  (none)")
    return "\n".join(out) + "\n"
