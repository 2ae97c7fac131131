"""JSON form of morphisms, properties and objects, plus a compact text form.

Default-valued fields are omitted on output (``eps`` false, absent bound
parts, empty custom lists); readers accept both the short and the full form.
"""

from __future__ import annotations

import json
from typing import Any

from .context import DEFAULT_CTX, Ctx
from .morphism import LENGTH, StandardMorphism, from_classes
from .objects import BOTTOM_OBJECT, StringObject, make_object
from .props import (
    INF,
    BOTTOM_BOUND,
    LowerBound,
    NonUnary,
    PropValue,
    Unary,
    UnaryInterval,
    make_bound,
    unary,
)


class SchemaError(ValueError):
    """A JSON document does not follow the expected shape; ``path`` locates the field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# ---------------------------------------------------------------- morphisms


def morphism_to_json(m: StandardMorphism) -> dict:
    if m.is_length:
        return {"length": True}
    groups: dict[str, set] = {}
    for k, v in m.mapping:
        if v:
            groups.setdefault(v, {v} if m.default == "id" else set()).add(k)
    classes = sorted("".join(sorted(g)) for g in groups.values())
    if m.default == "eps":
        return {"classes": classes, "erase": "*"}
    erase = "".join(sorted(k for k, v in m.mapping if v == ""))
    return {"classes": classes, "erase": erase}


def morphism_from_json(d: Any, ctx: Ctx = DEFAULT_CTX, path: str = "morphism") -> StandardMorphism:
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object")
    if d.get("length"):
        return LENGTH
    classes = d.get("classes", [])
    if not isinstance(classes, list):
        raise SchemaError(path + ".classes", "expected a list")
    cls = []
    for i, c in enumerate(classes):
        if isinstance(c, dict):
            c = c.get("chars")
        if not isinstance(c, str) or not c:
            raise SchemaError(f"{path}.classes[{i}]", "expected a non-empty string of letters")
        cls.append(c)
    erase = d.get("erase", "")
    if not isinstance(erase, str):
        raise SchemaError(path + ".erase", "expected a string of letters or '*'")
    try:
        if erase == "*":
            return from_classes(cls, (), "eps", alphabet=ctx.alphabet)
        return from_classes(cls, erase, "id", alphabet=ctx.alphabet)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


# ---------------------------------------------------------------- properties


def interval_to_json(u: UnaryInterval) -> dict:
    if u.is_bottom:
        return {"bottom": True}
    out: dict = {}
    if u.eps:
        out["eps"] = True
    if u.has_interval:
        out["lo"] = u.lo
        out["hi"] = None if u.hi == INF else int(u.hi)
    return out


def interval_from_json(d: Any, path: str = "length") -> UnaryInterval:
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object")
    if d.get("bottom"):
        return unary(False)
    lo = d.get("lo")
    hi = d.get("hi")
    if lo is not None and (not isinstance(lo, int) or lo < 0):
        raise SchemaError(path + ".lo", "expected a non-negative integer")
    if hi is not None and not isinstance(hi, int):
        raise SchemaError(path + ".hi", "expected an integer or null")
    eps = bool(d.get("eps", False))
    if lo == 0:
        eps, lo = True, 1
    return unary(eps, lo, INF if hi is None else hi)


def bound_to_json(eps: bool, b: LowerBound) -> dict:
    out: dict = {}
    if eps:
        out["eps"] = True
    if b.is_bottom:
        out["bottom"] = True
        return out
    if b.constant is not None:
        out["const"] = b.constant
        return out
    if b.prefix is not None:
        out["prefix"] = b.prefix
    if b.suffix is not None:
        out["suffix"] = b.suffix
    inner = sorted(f for f in b.factors if f != b.prefix and f != b.suffix)
    if inner:
        out["factors"] = inner
    return out


def prop_to_json(p: PropValue) -> dict:
    if isinstance(p, Unary):
        return interval_to_json(p.interval)
    return bound_to_json(p.eps, p.bound)


def bound_from_json(d: Any, path: str = "value") -> NonUnary:
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object")
    eps = bool(d.get("eps", False))
    if d.get("bottom"):
        return NonUnary(eps, BOTTOM_BOUND)
    for key in ("const", "prefix", "suffix"):
        if key in d and d[key] is not None and not isinstance(d[key], str):
            raise SchemaError(f"{path}.{key}", "expected a string")
    factors = d.get("factors", [])
    if not isinstance(factors, list) or not all(isinstance(f, str) for f in factors):
        raise SchemaError(path + ".factors", "expected a list of strings")
    if d.get("const") == "":
        return NonUnary(True, BOTTOM_BOUND)
    b = make_bound(constant=d.get("const"), prefix=d.get("prefix"), suffix=d.get("suffix"),
                   factors=[f for f in factors if f])
    return NonUnary(eps, b)


def prop_from_json(d: Any, unary_prop: bool, path: str) -> PropValue:
    if unary_prop:
        return Unary(interval_from_json(d, path))
    return bound_from_json(d, path)


# ---------------------------------------------------------------- objects


def object_to_json(o: StringObject) -> dict:
    if o.is_bottom:
        return {"bottom": True}
    out: dict = {"value": prop_to_json(o.value), "length": interval_to_json(o.length)}
    if o.customs:
        out["customs"] = [{"morphism": morphism_to_json(m), "prop": prop_to_json(p)} for m, p in o.customs]
    extra = o.universe - set(o.morphisms())
    if extra:
        out["properties"] = [morphism_to_json(m) for m in sorted(extra, key=lambda m: m.sort_key())]
    return out


def object_from_json(d: Any, ctx: Ctx = DEFAULT_CTX, path: str = "object") -> StringObject:
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object")
    if d.get("bottom"):
        return BOTTOM_OBJECT
    value = bound_from_json(d.get("value", {"eps": True}), path + ".value")
    length = interval_from_json(d.get("length", {"eps": True, "lo": 1, "hi": None}), path + ".length")
    customs = {}
    raw = d.get("customs", [])
    if not isinstance(raw, list):
        raise SchemaError(path + ".customs", "expected a list")
    for i, c in enumerate(raw):
        cp = f"{path}.customs[{i}]"
        if not isinstance(c, dict) or "morphism" not in c or "prop" not in c:
            raise SchemaError(cp, "expected an object with 'morphism' and 'prop'")
        m = morphism_from_json(c["morphism"], ctx, cp + ".morphism")
        customs[m] = prop_from_json(c["prop"], m.is_unary(ctx.alphabet), cp + ".prop")
    extra = [morphism_from_json(m, ctx, f"{path}.properties[{i}]")
             for i, m in enumerate(d.get("properties", []))]
    return make_object(value, length, customs, ctx, extra)


def dumps(o: StringObject) -> str:
    return json.dumps(object_to_json(o), sort_keys=True)


def loads(text: str, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    return object_from_json(json.loads(text), ctx)


# ---------------------------------------------------------------- text


def format_interval(u: UnaryInterval) -> str:
    if u.is_bottom:
        return "BOT"
    parts = ["[0]"] if u.eps else []
    if u.has_interval:
        hi = "inf" if u.hi == INF else str(int(u.hi))
        parts.append(f"[{u.lo},{hi})")
    return "U".join(parts)


def format_bound(eps: bool, b: LowerBound) -> str:
    items = []
    if b.is_bottom:
        return "eps" if eps else "BOT"
    if b.constant is not None:
        items.append(repr(b.constant))
    else:
        if b.prefix is not None:
            items.append(f"{b.prefix!r}..")
        if b.suffix is not None:
            items.append(f"..{b.suffix!r}")
        for f in sorted(x for x in b.factors if x != b.prefix and x != b.suffix):
            items.append(f"..{f!r}..")
    text = " & ".join(items) if items else "T"
    return ("eps | " + text) if eps else text


def format_prop(p: PropValue) -> str:
    if isinstance(p, Unary):
        return "len " + format_interval(p.interval)
    return format_bound(p.eps, p.bound)


def format_object(o: StringObject) -> str:
    if o.is_bottom:
        return "BOT"
    parts = [f"val {format_bound(o.value.eps, o.value.bound)}", f"len {format_interval(o.length)}"]
    for m, p in o.customs:
        parts.append(f"{m!r} {format_prop(p)}")
    return "{" + "; ".join(parts) + "}"
