from strobj import BOTTOM_OBJECT, make_object, unary
from strobj.oracle import all_words, alpha_of_set, enumerate_gamma
from strobj.oracle_search import brute_unavoidable
from strobj.props import NonUnary, make_bound
from strobj import suites
from strobj.words import Alphabet

import pytest


def test_enumerate_gamma_examples():
    b = make_bound(factors=["a", "b"])
    assert enumerate_gamma(b, "ab", 2).words == {"ab", "ba"}
    nine = make_object(NonUnary(False, make_bound(factors=["abbab", "abab"])), unary(False, 6, 8))
    assert enumerate_gamma(nine, "ab", 7).words == {"abbabab", "ababbab"}
    assert enumerate_gamma(BOTTOM_OBJECT, "ab", 4).words == frozenset()


def test_enumeration_guard():
    with pytest.raises(ValueError):
        enumerate_gamma(make_bound(), "ab", 13)


def test_alpha_of_set_examples():
    a = alpha_of_set({"aba"})
    assert a.value.bound.constant == "aba" and a.length == unary(False, 3, 4)
    nine = alpha_of_set({"abbabab", "ababbab"})
    b = nine.value.bound
    assert (b.prefix, b.suffix) == ("ab", "bab")
    assert {"abbab", "abab"} <= b.factors
    assert nine.length == unary(False, 7, 8)
    e = alpha_of_set({""})
    assert e.eps and e.length == unary(True)


def test_brute_unavoidable_examples():
    ab = Alphabet("ab")
    assert brute_unavoidable(make_bound(factors=["abaa", "bbaa"]), "aab", ab).unavoidable
    v = brute_unavoidable(make_bound(factors=["bbaaa", "bbbaa"]), "aab", ab)
    assert v.kind == "witness" and "aab" not in v.witness and len(v.witness) == 6
    # over an open alphabet a fresh separator avoids the word
    assert not brute_unavoidable(make_bound(factors=["abaa", "bbaa"]), "aab", None).unavoidable


def test_all_words_count():
    assert len(list(all_words("ab", 3))) == 15


def test_galois_and_atoms_small():
    assert suites.galois_sets(100, seed=2)
    assert suites.galois_objects(60, seed=2)
    assert suites.atoms_exhaustive("ab", 5)
    assert suites.atoms_random(60, seed=2)


def test_harness_catches_a_broken_meet():
    out = suites.lattice_laws(50, seed=0, meet=suites.broken_meet)
    assert not out.passed and out.counterexample is not None


def test_lattice_laws_small():
    assert suites.lattice_laws(40, seed=5)


def test_single_letter_candidate_on_the_top_bound():
    v = brute_unavoidable(make_bound(), "a", Alphabet("abc"))
    assert v.kind == "witness" and v.witness == "b"
