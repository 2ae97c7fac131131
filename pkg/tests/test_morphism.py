import itertools

import pytest
from hypothesis import given

from strobj.morphism import (
    IDENTITY,
    LENGTH,
    TOP_MORPHISM,
    all_standard_morphisms,
    apply_to_bound,
    from_classes,
    join,
    leq,
    normalize,
    transfers,
)
from strobj.words import Alphabet

from strategies import bounds, words

ABCD = Alphabet("abcd")
ALL4 = all_standard_morphisms("abcd")


def test_normalize_iterates_to_fixpoint():
    m = normalize({"c": "b", "b": "a"})
    assert m.apply("abcd") == "aaad"
    assert normalize({"b": ""}, "id").apply("abab") == "aa"
    with pytest.raises(ValueError):
        normalize({"a": "b"})


def test_from_classes_rejects_bad_partitions():
    with pytest.raises(ValueError):
        from_classes(["ab", "bc"])
    with pytest.raises(ValueError):
        from_classes(["ab"], erase="a")


def test_class_goes_to_least_letter():
    m = from_classes(["cb"], erase="d")
    assert m.apply("abcd") == "abb"


def test_count_on_four_letters():
    # 15 partitions; each class may be erased or kept
    assert len(ALL4) == 52
    assert len(set(ALL4)) == 52


def test_finite_alphabet_canonicalizes_defaults():
    a = from_classes([], (), "eps", keep="ab", alphabet=Alphabet("abc"))
    b = from_classes([], "c", alphabet=Alphabet("abc"))
    assert a == b


def test_join_merges_then_erases():
    sa = from_classes(["ab", "cd"], alphabet=ABCD)
    th = from_classes([], erase="bd", alphabet=ABCD)
    assert join(sa, th, ABCD).is_trivial(ABCD)
    assert join(sa, IDENTITY, ABCD) == sa
    assert join(LENGTH, IDENTITY) == LENGTH


def test_leq_is_a_partial_order_and_join_is_least_upper_bound():
    for m in ALL4:
        assert leq(m, m)
        assert leq(IDENTITY, m)
    for m1, m2 in itertools.product(ALL4, repeat=2):
        if leq(m1, m2) and leq(m2, m1):
            assert m1 == m2
        j = join(m1, m2, ABCD)
        assert leq(m1, j) and leq(m2, j)
        ups = [u for u in ALL4 if leq(m1, u) and leq(m2, u)]
        assert all(leq(j, u) for u in ups)
    for m1, m2, m3 in itertools.islice(itertools.product(ALL4, repeat=3), 0, None, 37):
        if leq(m1, m2) and leq(m2, m3):
            assert leq(m1, m3)


def test_transfers():
    s = from_classes(["bc"])
    assert transfers("a", IDENTITY, s)
    assert transfers("bab", from_classes(["bc"]), from_classes(["bc"]))
    assert not transfers("ab", IDENTITY, from_classes([], erase="b"))
    assert not transfers("a", IDENTITY, TOP_MORPHISM)


@given(bounds("abcd", max_len=3), words("abcd", 1, 6))
def test_image_of_bound_contains_images(b, w):
    for m in ALL4[::5]:
        if b.satisfied_by(w):
            assert apply_to_bound(m, False, b, ABCD).contains(m.apply(w))
