import random

from strobj.context import Ctx
from strobj.objects import make_object, reduce_object
from strobj.oracle import enumerate_gamma, random_bound
from strobj.perfect import candidate_count, cross_reduction_threshold, perfect_reduce_budgeted
from strobj.props import INF, NonUnary, make_bound, unary
from strobj.words import Alphabet

AB = Alphabet("ab")
AB_CTX = Ctx(alphabet=AB, budget=20_000)


def test_threshold_values():
    assert cross_reduction_threshold(make_bound(constant="abc")) == 0
    assert cross_reduction_threshold(make_bound()) == 0
    assert cross_reduction_threshold(make_bound(prefix="ab", factors=["ba"])) == 5
    # one piece needs an extra letter
    assert cross_reduction_threshold(make_bound(factors=["aba"])) == 4


def test_single_piece_at_its_own_length_is_a_constant():
    # with the unadjusted threshold (3) a length-3 object would be left unreduced
    b = make_bound(factors=["aba"])
    nb, length = perfect_reduce_budgeted(False, b, unary(False, 3, 4), 10_000, AB)
    assert nb.constant == "aba" and length == unary(False, 3, 4)


def test_two_examples_of_mutual_reduction():
    nb, ln = perfect_reduce_budgeted(False, make_bound(factors=["abbab", "abab"]), unary(False, 6, 8), 10_000, AB)
    assert nb == make_bound(prefix="ab", suffix="bab", factors=["abbab", "abab"])
    assert ln == unary(False, 7, 8)
    nb, ln = perfect_reduce_budgeted(False, make_bound(prefix="a", factors=["ba"]), unary(False, 3, 4), 10_000, AB)
    assert nb.constant == "aba"


def test_unsatisfiable_goes_to_bottom():
    nb, ln = perfect_reduce_budgeted(True, make_bound(factors=["aaaa"]), unary(True, 1, 3), 10_000, AB)
    assert nb.is_bottom and ln == unary(True)


def test_budget_and_unbounded_lengths_leave_input():
    b = make_bound(factors=["ab"])
    assert perfect_reduce_budgeted(False, b, unary(False, 2, INF), 10_000, AB) == (b, unary(False, 2, INF))
    assert perfect_reduce_budgeted(False, b, unary(False, 2, 9), 10, AB) == (b, unary(False, 2, 9))
    assert candidate_count(2, 2, 4) == 12


def test_reduction_keeps_concretization():
    rng = random.Random(5)
    for _ in range(60):
        b = random_bound(rng, "ab", 2, 3)
        lo = rng.randint(1, 5)
        o = make_object(NonUnary(False, b), unary(False, lo, lo + rng.randint(1, 3)))
        r = reduce_object(o, AB_CTX)
        assert enumerate_gamma(o, "ab", 8).words == enumerate_gamma(r, "ab", 8).words


def test_skip_above_threshold_changes_nothing():
    rng = random.Random(9)
    checked = 0
    while checked < 40:
        b = random_bound(rng, "abc", 2, 3)
        if b.is_bottom or b.constant is not None:
            continue
        t = cross_reduction_threshold(b)
        if t == 0:
            continue
        ln = unary(False, t, t + 2)
        nb, nl = perfect_reduce_budgeted(False, b, ln, 10 ** 6, Alphabet("abcde"))
        assert (nb, nl) == (b, ln)
        checked += 1
