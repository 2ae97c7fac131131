import json
import random

import pytest

from strobj import BOTTOM_OBJECT, Ctx, constant_object, make_object, unary
from strobj.morphism import from_classes
from strobj.oracle import random_object
from strobj.props import NonUnary, make_bound
from strobj.serialize import SchemaError, dumps, format_object, interval_to_json, loads, object_from_json
from strobj.words import Alphabet


def test_constant_and_bottom_forms():
    assert json.loads(dumps(constant_object("ab"))) == {"length": {"hi": 3, "lo": 2}, "value": {"const": "ab"}}
    assert json.loads(dumps(BOTTOM_OBJECT)) == {"bottom": True}
    assert interval_to_json(unary(True, 5)) == {"eps": True, "lo": 5, "hi": None}


def test_text_form():
    o = make_object(NonUnary(True, make_bound(prefix="a")), unary(True, 5),
                    {from_classes(["ab"]): NonUnary(False, make_bound(factors=["a"]))})
    assert format_object(o) == "{val eps | 'a'..; len [0]U[5,inf); σ{a,b->a} ..'a'..}"
    assert format_object(BOTTOM_OBJECT) == "BOT"


@pytest.mark.parametrize("seed", range(5))
def test_round_trip_random_objects(seed):
    ctx = Ctx(alphabet=Alphabet("abc"))
    rng = random.Random(seed)
    pool = [from_classes(["ab"], alphabet=ctx.alphabet), from_classes([], erase="c", alphabet=ctx.alphabet),
            from_classes(["abc"], alphabet=ctx.alphabet)]
    for _ in range(30):
        o = random_object(rng, "abc", rng.sample(pool, 2), ctx, reduce=rng.random() < 0.5)
        assert loads(dumps(o), ctx) == o


@pytest.mark.parametrize("doc", [
    [],
    {"length": {"lo": "x"}},
    {"length": {"hi": 1.5}},
    {"customs": {}},
    {"customs": [{"morphism": {}}]},
])
def test_malformed_documents_are_rejected(doc):
    with pytest.raises(SchemaError):
        object_from_json(doc)
