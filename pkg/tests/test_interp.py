import json
import random
from pathlib import Path

import pytest

from strobj.config import load_property_config
from strobj.context import Ctx
from strobj.lang import AnalysisDiagnostic, analyze_program, parse_program, render_report, run_concrete
from strobj.lang.concrete import LoopLimit
from strobj.lang.interp import LoopExitUnreachable, ProvenNonEmpty, UnreachableLine
from strobj.objects import constant_object
from strobj.props import unary
from strobj.serialize import format_object
from strobj.words import Alphabet

PROGRAMS = Path(__file__).parent / "programs"


def analyze(name, props=None, **ctx):
    tags = load_property_config(PROGRAMS / props) if props else ()
    return analyze_program(parse_program((PROGRAMS / name).read_text()), tags, Ctx(**ctx) if ctx else Ctx())


def test_tag_guard():
    r = analyze("tag_char.js")
    assert r.env_at(1)["y"].length == unary(True, 5)
    assert r.env_at(4)["y"].length == unary(False, 5)
    assert r.env_at(4)["y"].value.bound.prefix == "<tag>"
    assert r.env_at(4)["z"].length == unary(False, 1, 2)
    assert r.env_at(7)["z"].length == unary(False, 1, 2)
    assert r.verdicts == [UnreachableLine(6), ProvenNonEmpty("z", 7)]


def test_replace_loop_pins_our_trace():
    r = analyze("replace_loop.js")
    z4 = r.env_at(4)["z"]
    assert (z4.value.bound.prefix, z4.value.bound.suffix) == ("aa", "ab")
    assert z4.length == unary(False, 3)
    z6 = r.env_at(6)["z"]
    assert "a_b" in z6.value.bound.factors and z6.length == unary(False, 4)
    # the loop exit stays reachable: the abstract replace cannot rule out a remaining "ab"
    assert not any(isinstance(v, LoopExitUnreachable) for v in r.verdicts)
    assert r.verdicts == []


def test_nested_tags():
    r = analyze("nested_tags.js", "tags.json")
    z = r.env_at(5)["z"]
    assert z.value.bound.suffix == "</fstTag>"
    assert z.length == unary(False, 16)
    ((m, tag),) = z.customs
    assert (tag.bound.prefix, tag.bound.suffix) == (">", ">")
    assert r.env_at(5)["w"].custom_map()[m].bound.constant == "<>"
    assert r.verdicts == [UnreachableLine(7)]


def test_nested_tags_without_the_property_is_inconclusive():
    assert analyze("nested_tags.js").unreachable_lines() == []


def test_straight_line_constants():
    r = analyze_program(parse_program("let z = 'a' + 'b';"))
    assert r.env_at(1)["z"] == constant_object("ab")


def test_loop_terminates_with_widening():
    src = "let x = unknown();\nwhile (x) x = x.substring(1);\nreturn x;"
    r = analyze_program(parse_program(src))
    assert r.returns[3].contains("") and r.returns[3].eps
    r = analyze_program(parse_program("let x = 'a';\nwhile (x) x = x + 'a';\nreturn x;"))
    assert r.verdicts == [UnreachableLine(3), LoopExitUnreachable(2)] or UnreachableLine(3) in r.verdicts


def test_literal_outside_alphabet():
    with pytest.raises(AnalysisDiagnostic) as info:
        analyze_program(parse_program("let x = 'ab';\nlet y = 'c';"), (), Ctx(alphabet=Alphabet("ab")))
    assert info.value.line == 2


def test_report_rendering():
    r = analyze("tag_char.js")
    text = render_report(r)
    assert "   6  (unreachable)" in text and "line 7: z is non-empty" in text
    doc = json.loads(render_report(r, "json"))
    assert {"kind": "unreachable", "line": 6} in doc["verdicts"]
    assert doc["lines"][0]["env"]["y"]["length"] == {"eps": True, "lo": 5, "hi": None}


# ---------------------------------------------------------------- soundness against concrete runs

VARS = ("x", "y", "z")


def _expr(rng, depth=0):
    r = rng.random()
    if depth > 1 or r < 0.3:
        return rng.choice([repr(rng.choice(["a", "b", "ab", "ba", ""])), rng.choice(VARS), "unknown()"])
    if r < 0.5:
        return f"{_expr(rng, depth + 1)} + {_expr(rng, depth + 1)}"
    if r < 0.65:
        return f"{rng.choice(VARS)}.substring({rng.randint(0, 3)})"
    if r < 0.75:
        return f"{rng.choice(VARS)}.charAt({rng.randint(0, 3)})"
    if r < 0.85:
        return f"{rng.choice(VARS)}.replace({_expr(rng, 2)}, {_expr(rng, 2)})"
    return f"({_cond(rng)} ? {_expr(rng, depth + 1)} : {_expr(rng, depth + 1)})"


def _cond(rng):
    r = rng.random()
    if r < 0.4:
        return ("!" if rng.random() < 0.5 else "") + rng.choice(VARS)
    rel = rng.choice(["==", "!=", "<", ">=", ">", "<="])
    return f"{rng.choice(VARS)}.indexOf({_expr(rng, 2)}) {rel} {rng.randint(-1, 2)}"


def _program(rng):
    lines = [f"let {v} = {rng.choice(['unknown()', repr(rng.choice(['a', 'ab', '']))])};" for v in VARS]
    for _ in range(rng.randint(1, 5)):
        stmt = f"{rng.choice(VARS)} = {_expr(rng)};"
        if rng.random() < 0.35:
            stmt = f"if ({_cond(rng)}) {stmt} else {rng.choice(VARS)} = {_expr(rng)};"
        lines.append(stmt)
    lines.append(f"return {rng.choice(VARS)};")
    return "\n".join(lines)


@pytest.mark.parametrize("seed", range(8))
def test_random_loop_free_programs_are_sound(seed):
    rng = random.Random(seed)
    for _ in range(15):
        src = _program(rng)
        prog = parse_program(src)
        report = analyze_program(prog)
        last = len(src.splitlines())
        snap = report.snapshot(last)
        for _ in range(20):
            run = run_concrete(prog, lambda: "".join(rng.choice("ab") for _ in range(rng.randint(0, 6))))
            assert snap.reachable, src
            for v in VARS:
                assert snap.env[v].contains(run.env[v]), (src, v, run.env[v], format_object(snap.env[v]))
            assert report.returns[last].contains(run.returned), src


def test_loop_program_is_sound_on_samples():
    src = "let x = unknown();\nlet y = '';\nwhile (x.indexOf('ab') >= 0) {\n  x = x.replace('ab', 'b');\n  y = y + 'a';\n}\nreturn x;"
    prog = parse_program(src)
    report = analyze_program(prog)
    rng = random.Random(1)
    for _ in range(200):
        try:
            run = run_concrete(prog, lambda: "".join(rng.choice("ab") for _ in range(rng.randint(0, 8))))
        except LoopLimit:
            continue
        assert report.returns[7].contains(run.returned)
        assert report.env_at(7)["y"].contains(run.env["y"])
