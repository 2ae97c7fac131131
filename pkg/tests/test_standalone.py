import random

import pytest
from hypothesis import given, settings

from strobj.oracle_search import brute_unavoidable, four_form_candidates
from strobj.props import make_bound
from strobj.standalone import standalone_reduce, unavoidable_candidates
from strobj.words import Alphabet

from strategies import bounds

AB = Alphabet("ab")


def test_two_codes_from_the_unavoidability_example():
    assert standalone_reduce(make_bound(factors=["abaa", "bbaa"]), AB).factors == frozenset({"abaa", "bbaa", "aab"})
    b = make_bound(factors=["aaabb", "aabbb"])
    assert standalone_reduce(b, AB) == b


def test_the_intended_second_code_has_an_avoiding_witness():
    # the squares-and-cubes code {b^2a^3, b^3a^2}: "aab" is avoidable via b^3a^3
    b = make_bound(factors=["bbaaa", "bbbaa"])
    v = brute_unavoidable(b, "aab", AB)
    assert v.kind == "witness" and v.witness == "bbbaaa"
    assert "aab" not in standalone_reduce(b, AB).factors


def test_prefix_with_longer_run_member_is_not_extended():
    # prefix baa plus member baaa: "aab" is not forced
    b = make_bound(prefix="baa", factors=["baaa"])
    assert brute_unavoidable(b, "aab", AB).kind == "witness"
    assert not any("aab" in m for m in standalone_reduce(b, AB).factors)


def test_identity_outside_binary():
    b = make_bound(factors=["abaa", "bbaa"])
    assert standalone_reduce(b, Alphabet("abc")) == b
    assert standalone_reduce(b, 3) == b


def test_candidates_are_four_forms():
    for w in unavoidable_candidates(make_bound(factors=["abaa", "bbaa"]), "a", "b"):
        assert w in set(four_form_candidates("a", "b", 6))


@settings(max_examples=300)
@given(bounds("ab", max_len=4, max_members=4))
def test_agrees_with_exhaustive_search(b):
    r = standalone_reduce(b, AB)
    if b.is_bottom or b.constant is not None:
        assert r == b
        return
    for c in four_form_candidates("a", "b", 6):
        assert any(c in m for m in r.factors) == brute_unavoidable(b, c, AB).unavoidable, c


@pytest.mark.parametrize("seed", [1, 2])
def test_added_words_are_unavoidable(seed):
    rng = random.Random(seed)
    for _ in range(100):
        fs = ["".join(rng.choice("ab") for _ in range(rng.randint(1, 4))) for _ in range(rng.randint(1, 3))]
        b = make_bound(factors=fs)
        for w in standalone_reduce(b, AB).factors - b.factors:
            assert brute_unavoidable(b, w, AB).unavoidable
