import pytest

from strobj import TOP_OBJECT, constant_object, eps_object, make_object, unary
from strobj.ops import (
    abs_char_at,
    abs_concat,
    abs_index_of,
    abs_replace,
    abs_substring,
    assume_falsy,
    assume_index_cmp,
    assume_truthy,
    concrete_eval,
    int_exact,
)
from strobj.props import NonUnary, make_bound
from strobj.serialize import format_object
from strobj import suites

TAG = make_object(NonUnary(False, make_bound(prefix="<tag>")), unary(False, 5))


def val(**kw):
    return NonUnary(False, make_bound(**kw))


def test_concrete_semantics():
    assert concrete_eval("substring", "abc", 5) == ""
    assert concrete_eval("replace", "aaab", "ab", "a_b") == "aaa_b"
    assert concrete_eval("indexOf", "abc", "x") == -1
    assert concrete_eval("charAt", "abc", 1) == "b"
    with pytest.raises(ValueError):
        concrete_eval("concat", "a")


def test_concat():
    tail = abs_concat(TOP_OBJECT, constant_object("ab"))
    both = abs_concat(constant_object("a"), tail)
    assert both.value == val(prefix="a", suffix="ab")
    assert both.length == unary(False, 3)
    assert abs_concat(eps_object(), TAG) == TAG


def test_substring():
    assert abs_substring(TAG, int_exact(0)) == TAG
    assert abs_substring(constant_object("abc"), int_exact(3)) == eps_object()


def test_char_at_reads_a_known_prefix():
    z = abs_char_at(TAG, int_exact(4))
    assert z.length == unary(False, 1, 2)
    assert z.value.bound.constant == ">"
    assert abs_char_at(constant_object("ab"), int_exact(5)).eps


def test_index_of():
    ends_ab = make_object(val(suffix="ab"), None)
    assert not abs_index_of(ends_ab, constant_object("ab")).contains(-1)
    top = abs_index_of(TOP_OBJECT, TOP_OBJECT)
    assert top.contains(-1) and top.contains(0) and top.contains(100)


def test_replace():
    o = make_object(val(prefix="aa", suffix="ab"), unary(False, 3))
    r = abs_replace(o, constant_object("ab"), constant_object("a_b"))
    assert r.value == val(prefix="a", factors=["a_b"])
    c = abs_replace(constant_object("aaab"), constant_object("ab"), constant_object("a_b"))
    assert c.value.bound.constant == "aaa_b"


def test_assumptions():
    y = make_object(None, unary(True, 5))
    assert assume_truthy(y).length == unary(False, 5)
    assert assume_falsy(TAG).is_bottom
    head, pat = assume_index_cmp(TOP_OBJECT, constant_object("ab"), "==", 0)
    assert head.value.bound.prefix == "ab"
    inside, _ = assume_index_cmp(TOP_OBJECT, constant_object("ab"), ">=", 0)
    assert "ab" in inside.value.bound.factors
    never, _ = assume_index_cmp(constant_object("ba"), constant_object("ab"), ">=", 0)
    assert never.is_bottom


def test_text_rendering_of_a_result():
    assert format_object(abs_char_at(TAG, int_exact(4))) == "{val '>'; len [1,2)}"


@pytest.mark.parametrize("name", sorted(suites.SOUNDNESS_SUITES))
def test_soundness_small(name):
    out = suites.SOUNDNESS_SUITES[name](60, seed=11)
    assert out.passed, out.counterexample


def test_concat_soundness_at_depth_eight():
    out = suites.soundness_concat(15, seed=3, cfg=suites.SuiteConfig(max_len=8, max_hi=5))
    assert out.passed, out.counterexample
