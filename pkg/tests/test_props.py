from hypothesis import given

from strobj.props import (
    BOT,
    BOTTOM_BOUND,
    INF,
    TOP_BOUND,
    NonUnary,
    bound_join,
    bound_leq,
    bound_meet,
    make_bound,
    prefix_join,
    prefix_meet,
    prop_join,
    suffix_meet,
    unary,
    unary_join,
    unary_leq,
    unary_meet,
)

from strategies import bounds, intervals, words


def test_example_join_of_eps_pairs():
    left = NonUnary(True, make_bound(factors=["ab"]))
    right = NonUnary(False, make_bound(factors=["ba"]))
    assert prop_join(left, right) == NonUnary(True, make_bound(factors=["a", "b"]))


def test_prefix_lattice():
    assert prefix_join("abc", "abd") == "ab"
    assert prefix_join("a", "b") is None
    assert prefix_join(BOT, "ab") == "ab"
    assert prefix_meet("ab", "abc") == "abc"
    assert prefix_meet("ab", "b") is BOT
    assert suffix_meet("ab", "b") == "ab"


def test_basic_reduction():
    b = make_bound(prefix="ab", suffix="ba", factors=["b", "abb"])
    assert b.factors == frozenset({"abb", "ba"})
    c = make_bound(constant="abc", prefix="ab", factors=["bc"])
    assert c.constant == "abc"
    assert make_bound(constant="abc", prefix="b").is_bottom
    assert make_bound(constant="abc", factors=["ca"]).is_bottom


def test_bottom_and_top():
    assert bound_join(BOTTOM_BOUND, make_bound(factors=["a"])) == make_bound(factors=["a"])
    assert bound_meet(TOP_BOUND, make_bound(prefix="a")) == make_bound(prefix="a")
    assert not BOTTOM_BOUND.satisfied_by("a")
    assert not TOP_BOUND.satisfied_by("")


def test_unary_normalization():
    assert unary(False, 3, 3).is_bottom
    assert unary(True, 0, 4) == unary(True, 1, 4)
    u = unary(True, 5, INF)
    assert u.contains(0) and u.contains(9) and not u.contains(3)
    assert unary_join(unary(False, 1, 2), unary(False, 5, 6)) == unary(False, 1, 6)
    assert unary_meet(unary(True, 1, 4), unary(False, 3, INF)) == unary(False, 3, 4)


@given(bounds(), bounds(), words("ab", 1, 6))
def test_bound_join_is_sound(b1, b2, w):
    if b1.satisfied_by(w) or b2.satisfied_by(w):
        assert bound_join(b1, b2).satisfied_by(w)


@given(bounds(), bounds(), words("ab", 1, 6))
def test_bound_meet_is_exact(b1, b2, w):
    assert bound_meet(b1, b2).satisfied_by(w) == (b1.satisfied_by(w) and b2.satisfied_by(w))


@given(bounds(), bounds())
def test_bound_lattice_laws(b1, b2):
    assert bound_join(b1, b2) == bound_join(b2, b1)
    assert bound_meet(b1, b2) == bound_meet(b2, b1)
    assert bound_leq(b1, bound_join(b1, b2))
    assert bound_leq(bound_meet(b1, b2), b1)


@given(intervals(), intervals())
def test_interval_laws(u1, u2):
    j, m = unary_join(u1, u2), unary_meet(u1, u2)
    assert unary_leq(u1, j) and unary_leq(u2, j)
    assert unary_leq(m, u1) and unary_leq(m, u2)
    for n in range(10):
        assert m.contains(n) == (u1.contains(n) and u2.contains(n))
        if u1.contains(n) or u2.contains(n):
            assert j.contains(n)
