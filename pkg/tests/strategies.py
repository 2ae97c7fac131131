"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from strobj.props import INF, NonUnary, make_bound, unary


def words(letters="ab", min_size=0, max_size=5):
    return st.text(alphabet=letters, min_size=min_size, max_size=max_size)


@st.composite
def bounds(draw, letters="ab", max_len=3, max_members=3):
    if draw(st.integers(0, 19)) == 0:
        return make_bound(constant=draw(words(letters, 1, max_len + 1)))
    members = draw(st.lists(words(letters, 1, max_len), max_size=max_members))
    prefix = draw(st.none() | words(letters, 1, max_len))
    suffix = draw(st.none() | words(letters, 1, max_len))
    return make_bound(prefix=prefix, suffix=suffix, factors=members)


@st.composite
def intervals(draw, max_hi=8):
    eps = draw(st.booleans())
    if draw(st.integers(0, 5)) == 0:
        return unary(True)
    lo = draw(st.integers(1, max_hi - 1))
    hi = draw(st.sampled_from([INF, *range(lo + 1, max_hi + 1)]))
    return unary(eps, lo, hi)


@st.composite
def nonunary(draw, letters="ab", max_len=3):
    return NonUnary(draw(st.booleans()), draw(bounds(letters, max_len)))
