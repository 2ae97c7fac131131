import pytest

from strobj.lang import ParseError, parse_program
from strobj.lang.ast import Cmp, Concat, If, Let, Return, StrLit, Truthy, Var, While


def test_statements_and_lines():
    p = parse_program("let x = 'a';\nif (x.indexOf('b') == 0) x = 'c';\nwhile (x) { x = x.substring(1); }\nreturn x + \"b\";")
    let, cond, loop, ret = p.body
    assert let == Let("x", StrLit("a"), 1)
    assert isinstance(cond, If) and isinstance(cond.cond, Cmp) and cond.cond.rel == "==" and cond.line == 2
    assert isinstance(loop, While) and loop.cond == Truthy(Var("x")) and loop.line == 3
    assert isinstance(ret, Return) and ret.expr == Concat(Var("x"), StrLit("b"))


def test_comments_and_escapes():
    p = parse_program("// header\nlet x = 'it\\'s'; /* trailing */")
    assert p.body[0].expr == StrLit("it's")


@pytest.mark.parametrize("src, where, fragment", [
    ("let x = ;", (1, 9), "expected an expression"),
    ("x = 'a';", (1, 1), "before definition"),
    ("let x = 'a'.foo(1);", (1, 13), "unknown method"),
    ("let x = 'a\\q';", (1, 11), "unknown escape"),
    ("let x = 'a';\nlet y = x.charAt(x);", (2, 18), "integer literal"),
    ("let x = #;", (1, 9), "unexpected character"),
])
def test_errors_carry_positions(src, where, fragment):
    with pytest.raises(ParseError) as info:
        parse_program(src)
    assert (info.value.line, info.value.col) == where
    assert fragment in info.value.message


def test_negation_binds_tighter_than_the_conditional():
    from strobj.lang.ast import Not, Ternary
    (_, let) = parse_program("let x = 'a'; let y = (!x ? 'b' : x);").body
    assert let.expr == Ternary(Not(Truthy(Var("x"))), StrLit("b"), Var("x"))
