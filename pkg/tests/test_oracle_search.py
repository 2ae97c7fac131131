from strobj.oracle_search import MAX_LEN_GUARD, brute_unavoidable, search_letters
from strobj.props import BOTTOM_BOUND, make_bound
from strobj.words import Alphabet

AB = Alphabet("ab")


def test_verdict_kinds():
    assert brute_unavoidable(make_bound(factors=["abaa", "bbaa"]), "aab", AB).unavoidable
    v = brute_unavoidable(make_bound(factors=["ab"]), "ba", AB)
    assert v.kind == "witness" and v.witness == "ab"
    assert brute_unavoidable(BOTTOM_BOUND, "a", AB).unavoidable
    assert brute_unavoidable(make_bound(constant="abc"), "bc").unavoidable
    assert brute_unavoidable(make_bound(constant="abc"), "ca").witness == "abc"


def test_witness_satisfies_bound_and_avoids_candidate():
    b = make_bound(prefix="ab", suffix="ba", factors=["bb"])
    v = brute_unavoidable(b, "aa", AB)
    assert v.kind == "witness"
    assert b.satisfied_by(v.witness) and "aa" not in v.witness


def test_depth_cap_is_inconclusive():
    b = make_bound(factors=["aaaaa"])
    assert brute_unavoidable(b, "b", Alphabet("ab"), max_len=3).kind == "inconclusive"


def test_open_alphabet_adds_fresh_letters():
    letters = search_letters(make_bound(factors=["ab"]), "ba", None)
    assert letters[:2] == ["a", "b"] and len(letters) == 4
    # a fresh letter separates the two members, so "ba" is avoidable
    assert brute_unavoidable(make_bound(factors=["ab", "a"]), "ba").kind == "witness"
    assert MAX_LEN_GUARD == 12
