import json

import pytest

from strobj.config import load_property_config, parse_config
from strobj.morphism import from_classes
from strobj.serialize import SchemaError


def test_tag_property(tmp_path):
    p = tmp_path / "props.json"
    p.write_text(json.dumps({"properties": [{"name": "tags", "classes": [{"chars": "<"}, {"chars": ">"}],
                                             "erase": "*"}]}))
    (m,) = load_property_config(p)
    assert m.apply("<a>x</a>") == "<><>"


def test_empty_property_list():
    assert parse_config({"properties": []}) == []
    assert parse_config({}) == []


def test_classes_accept_plain_strings():
    (spec,) = parse_config({"properties": [{"classes": ["ab"]}]})
    assert spec.morphism == from_classes(["ab"])


@pytest.mark.parametrize("doc", [
    [],
    {"properties": {}},
    {"properties": [{"classes": [{"chars": ""}]}]},
    {"properties": [{"classes": ["ab"], "erase": "b"}]},
    {"properties": [{"erase": "*", "identity": "*"}]},
    {"properties": [{"colour": "red"}]},
])
def test_bad_configs(doc):
    with pytest.raises(SchemaError):
        parse_config(doc)
