"""Loading the custom property set from a JSON configuration file.

Format::

    {"properties": [{"name": "tags",
                     "classes": [{"chars": "<"}, {"chars": ">"}],
                     "erase": "*", "identity": ""}]}

Each class goes to its least letter.  ``erase`` and ``identity`` are letter
strings, or ``"*"`` for every letter not mentioned elsewhere; at most one of
them may be ``"*"``.  Without any ``"*"`` unmentioned letters are kept.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Union

from .context import DEFAULT_CTX, Ctx
from .morphism import StandardMorphism, from_classes
from .serialize import SchemaError


@dataclass(frozen=True)
class PropertySpec:
    name: str
    morphism: StandardMorphism


def _letters(v: Any, path: str) -> str:
    if not isinstance(v, str):
        raise SchemaError(path, "expected a string of letters or '*'")
    return v


def parse_property(d: Any, ctx: Ctx = DEFAULT_CTX, path: str = "properties[0]") -> PropertySpec:
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object")
    unknown = set(d) - {"name", "classes", "erase", "identity"}
    if unknown:
        raise SchemaError(path, f"unknown field(s) {sorted(unknown)}")
    name = d.get("name", "")
    if not isinstance(name, str):
        raise SchemaError(path + ".name", "expected a string")
    classes = d.get("classes", [])
    if not isinstance(classes, list):
        raise SchemaError(path + ".classes", "expected a list")
    cls = []
    for i, c in enumerate(classes):
        cp = f"{path}.classes[{i}]"
        if isinstance(c, dict):
            if set(c) != {"chars"}:
                raise SchemaError(cp, "expected exactly the field 'chars'")
            c = c["chars"]
        if not isinstance(c, str) or not c:
            raise SchemaError(cp + ".chars", "expected a non-empty string")
        cls.append(c)
    erase = _letters(d.get("erase", ""), path + ".erase")
    identity = _letters(d.get("identity", ""), path + ".identity")
    if erase == "*" and identity == "*":
        raise SchemaError(path, "'erase' and 'identity' cannot both be '*'")
    default = "eps" if erase == "*" else "id"
    try:
        m = from_classes(cls, "" if erase == "*" else erase, default,
                         keep="" if identity == "*" else identity, alphabet=ctx.alphabet)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None
    return PropertySpec(name, m)


def parse_config(doc: Any, ctx: Ctx = DEFAULT_CTX) -> list[PropertySpec]:
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    props = doc.get("properties", [])
    if not isinstance(props, list):
        raise SchemaError("properties", "expected a list")
    return [parse_property(p, ctx, f"properties[{i}]") for i, p in enumerate(props)]


def load_property_config(path: Union[str, Path], ctx: Ctx = DEFAULT_CTX) -> set[StandardMorphism]:
    """The normalized morphisms of a configuration file."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return {p.morphism for p in parse_config(doc, ctx)}
