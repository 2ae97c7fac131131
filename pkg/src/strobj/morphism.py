"""Standard morphisms: partitions of the alphabet into classes sent to their
minimal letter, plus a set of erased letters.

A morphism is stored as an explicit finite map together with a ``default``
behaviour for every letter the map does not mention:

* ``"id"``  -- unmentioned letters are fixed,
* ``"eps"`` -- unmentioned letters are erased,
* ``"len"`` -- every letter goes to ``LEN_LETTER`` (the length property).

The defaults let the same code run against an open alphabet.  When the session
alphabet is finite, :func:`normalize` rewrites everything into an explicit map
with the ``"id"`` default so that equal functions compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional

from ._hashing import hash_once
from .props import (
    BOTTOM_BOUND,
    INF,
    EPS_ONLY,
    NonUnary,
    PropValue,
    Unary,
    make_bound,
    unary,
)
from .words import Alphabet

LEN_LETTER = "\x00"
_PROBE = "\U0010fffd"  # stands for "any letter not mentioned"


@hash_once
@dataclass(frozen=True)
class StandardMorphism:
    mapping: tuple = ()  # sorted ((letter, image), ...); image "" means erased
    default: str = "id"

    # -------------------------------------------------------------- basics

    def image(self, c: str) -> str:
        if self.default == "len":
            return LEN_LETTER
        for k, v in self.mapping:
            if k == c:
                return v
        return c if self.default == "id" else ""

    @lru_cache(maxsize=1 << 16)
    def apply(self, w: str) -> str:
        if self.default == "len":
            return LEN_LETTER * len(w)
        table = dict(self.mapping)
        if self.default == "id":
            return "".join(table.get(c, c) for c in w)
        return "".join(table.get(c, "") for c in w)

    __call__ = apply

    @lru_cache(maxsize=None)
    def mentioned(self) -> frozenset:
        out = set()
        for k, v in self.mapping:
            out.add(k)
            if v:
                out.add(v)
        return frozenset(out)

    @property
    def is_identity(self) -> bool:
        return self.default == "id" and not self.mapping

    @property
    def is_length(self) -> bool:
        return self.default == "len"

    def erases(self, c: str) -> bool:
        return self.image(c) == ""

    @lru_cache(maxsize=1 << 16)
    def erase_key(self):
        """Hashable description of the erased set."""
        if self.default == "len":
            return ("fin", frozenset())
        if self.default == "id":
            return ("fin", frozenset(k for k, v in self.mapping if not v))
        return ("cofin", frozenset(k for k, v in self.mapping if v))

    @lru_cache(maxsize=1 << 16)
    def is_erasing(self, alphabet: Optional[Alphabet] = None) -> bool:
        kind, s = self.erase_key()
        if kind == "cofin":
            if alphabet is None or alphabet.is_open:
                return True
            return any(c not in s for c in alphabet.letters)
        return bool(s)

    @lru_cache(maxsize=1 << 16)
    def erase_subset(self, other: "StandardMorphism", alphabet: Optional[Alphabet] = None) -> bool:
        """Is every letter erased by ``self`` also erased by ``other``?"""
        k1, s1 = self.erase_key()
        k2, s2 = other.erase_key()
        if alphabet is not None and not alphabet.is_open:
            return all(other.erases(c) for c in alphabet.letters if self.erases(c))
        if k1 == "fin" and k2 == "fin":
            return s1 <= s2
        if k1 == "fin" and k2 == "cofin":
            return not (s1 & s2)
        if k1 == "cofin" and k2 == "fin":
            return False
        return s2 <= s1

    @lru_cache(maxsize=1 << 16)
    def class_of(self, r: str, alphabet: Optional[Alphabet] = None) -> Optional[frozenset]:
        """Letters sent to ``r``; ``None`` when that set is infinite."""
        if self.default == "len":
            if r != LEN_LETTER:
                return frozenset()
            return None if alphabet is None or alphabet.is_open else frozenset(alphabet.letters)
        out = {k for k, v in self.mapping if v == r}
        if self.default == "id" and r and all(k != r for k, _ in self.mapping):
            out.add(r)
        if alphabet is not None and not alphabet.is_open:
            out &= set(alphabet.letters)
        return frozenset(out)

    @lru_cache(maxsize=1 << 16)
    def image_letters(self, alphabet: Optional[Alphabet] = None) -> Optional[frozenset]:
        """Non-empty images; ``None`` when infinitely many letters are fixed."""
        if self.default == "len":
            return frozenset([LEN_LETTER])
        if alphabet is not None and not alphabet.is_open:
            return frozenset(x for x in (self.image(c) for c in alphabet.letters) if x)
        if self.default == "id":
            return None
        return frozenset(v for _, v in self.mapping if v)

    @lru_cache(maxsize=1 << 16)
    def is_unary(self, alphabet: Optional[Alphabet] = None) -> bool:
        imgs = self.image_letters(alphabet)
        return imgs is not None and len(imgs) <= 1

    @lru_cache(maxsize=1 << 16)
    def is_trivial(self, alphabet: Optional[Alphabet] = None) -> bool:
        """Erases everything (the top morphism)."""
        imgs = self.image_letters(alphabet)
        return imgs is not None and not imgs

    def unary_letter(self, alphabet: Optional[Alphabet] = None) -> Optional[str]:
        imgs = self.image_letters(alphabet)
        return next(iter(imgs)) if imgs else None

    def sort_key(self):
        return (self.default, self.mapping)

    def __repr__(self):
        if self.is_length:
            return "σ_len"
        if self.is_identity:
            return "id"
        return f"σ{describe(self)}"


IDENTITY = StandardMorphism()
LENGTH = StandardMorphism((), "len")
TOP_MORPHISM = StandardMorphism((), "eps")


def describe(m: StandardMorphism) -> str:
    """Compact text such as ``{a,b->a; c->eps | rest->eps}``."""
    if m.is_length:
        return "{*->len}"
    groups: dict[str, list[str]] = {}
    for k, v in m.mapping:
        groups.setdefault(v, []).append(k)
    parts = []
    for img in sorted(groups, key=lambda s: (s == "", s)):
        members = set(groups[img])
        if img and m.default == "id":
            members.add(img)
        parts.append(",".join(sorted(members)) + "->" + (img or "eps"))
    if m.default == "eps":
        parts.append("rest->eps")
    return "{" + "; ".join(parts) + "}"


def _canonical(table: Mapping[str, str], default: str, alphabet: Optional[Alphabet]) -> StandardMorphism:
    if alphabet is not None and not alphabet.is_open and default == "eps":
        table = {c: table.get(c, "") for c in alphabet.letters}
        default = "id"
    if default == "id":
        items = tuple(sorted((k, v) for k, v in table.items() if v != k))
    else:
        items = tuple(sorted((k, v) for k, v in table.items() if v != ""))
    return StandardMorphism(items, default)


def normalize(raw: Mapping[str, str], default: str = "id",
              alphabet: Optional[Alphabet] = None) -> StandardMorphism:
    """Iterate a letter map to its fixpoint and return the standard morphism.

    Each image must be ``""`` or a letter with a code not above its source.
    """
    if default not in ("id", "eps"):
        raise ValueError(f"unknown default {default!r}")
    for k, v in raw.items():
        if len(k) != 1 or len(v) > 1:
            raise ValueError(f"letter map entries must be single letters: {k!r}->{v!r}")
        if v and v > k:
            raise ValueError(f"image {v!r} of {k!r} has a larger code; not length-non-increasing")

    def step(c: str) -> str:
        if c in raw:
            return raw[c]
        return c if default == "id" else ""

    table = {}
    for k in raw:
        c = k
        for _ in range(len(raw) + 2):
            n = step(c)
            if n == c or n == "":
                c = n
                break
            c = n
        table[k] = c
    return _canonical(table, default, alphabet)


def from_classes(classes: Iterable[Iterable[str]], erase: Iterable[str] = (),
                 default: str = "id", keep: Iterable[str] = (),
                 alphabet: Optional[Alphabet] = None) -> StandardMorphism:
    """Build from a partition: each class goes to its minimal letter."""
    table: dict[str, str] = {}
    seen: set[str] = set()
    for cls in classes:
        letters = sorted(set(cls))
        if not letters:
            continue
        if seen & set(letters):
            raise ValueError("classes overlap")
        seen |= set(letters)
        for c in letters:
            table[c] = letters[0]
    for c in erase:
        if c in seen:
            raise ValueError(f"letter {c!r} is both in a class and erased")
        table[c] = ""
        seen.add(c)
    for c in keep:
        if c in table and table[c] not in ("", c):
            raise ValueError(f"letter {c!r} is both kept and merged")
        if table.get(c) == "":
            raise ValueError(f"letter {c!r} is both kept and erased")
        table[c] = c
    return _canonical(table, default, alphabet)


@lru_cache(maxsize=1 << 16)
def leq(m1: StandardMorphism, m2: StandardMorphism) -> bool:
    """``m1 <= m2`` iff ``m2 . m1 == m2``."""
    probes = m1.mentioned() | m2.mentioned() | {_PROBE, LEN_LETTER}
    return all(m2.apply(m1.image(c)) == m2.image(c) for c in probes)


def less(m1: StandardMorphism, m2: StandardMorphism) -> bool:
    return m1 != m2 and leq(m1, m2)


@lru_cache(maxsize=1 << 16)
def join(m1: StandardMorphism, m2: StandardMorphism,
         alphabet: Optional[Alphabet] = None) -> StandardMorphism:
    """Finest common coarsening; a merged class is erased if any member is."""
    if m1.is_length or m2.is_length:
        other = m2 if m1.is_length else m1
        if other.is_length or not other.is_erasing(alphabet):
            return LENGTH
        return _canonical({}, "eps", alphabet)
    letters = sorted(m1.mentioned() | m2.mentioned())
    if alphabet is not None and not alphabet.is_open:
        letters = sorted(set(letters) | set(alphabet.letters))
    parent = {c: c for c in letters}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    erased = set()
    for m in (m1, m2):
        for c in letters:
            img = m.image(c)
            if not img:
                erased.add(c)
            elif img in parent:
                a, b = find(c), find(img)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    classes: dict[str, list[str]] = {}
    for c in letters:
        classes.setdefault(find(c), []).append(c)
    table = {}
    for members in classes.values():
        img = "" if any(c in erased for c in members) else min(members)
        for c in members:
            table[c] = img
    default = "eps" if "eps" in (m1.default, m2.default) else "id"
    return _canonical(table, default, alphabet)


def preserves(w: str, m2: StandardMorphism, m1: StandardMorphism,
              alphabet: Optional[Alphabet] = None) -> bool:
    """Does ``m2`` preserve ``w`` with respect to ``m1``?

    Both must fix ``w``; then the preimage sets must coincide, or ``w`` is one
    letter whose one-letter preimages coincide.
    """
    if not w or m1.apply(w) != w or m2.apply(w) != w:
        return False
    same_letters = all(m1.class_of(c, alphabet) == m2.class_of(c, alphabet) for c in set(w))
    if len(w) == 1:
        return same_letters
    return same_letters and m1.erase_key() == m2.erase_key()


@lru_cache(maxsize=1 << 16)
def transfers(w: str, source: StandardMorphism, target: StandardMorphism,
              alphabet: Optional[Alphabet] = None) -> bool:
    """Is ``w`` in the source image guaranteed to give ``w`` in the target image?

    Every source preimage of ``w`` must map to ``w`` under the target: each
    letter class of the source must sit inside the target class, and the
    letters the source erases between them must also vanish in the target.
    """
    if not w or source.apply(w) != w or target.apply(w) != w:
        return False
    for c in set(w):
        cs = source.class_of(c, alphabet)
        ct = target.class_of(c, alphabet)
        if cs is None:
            return False
        if ct is not None and not cs <= ct:
            return False
    return len(w) == 1 or source.erase_subset(target, alphabet)


# ------------------------------------------------------------ images of values


@lru_cache(maxsize=1 << 16)
def apply_to_bound(m: StandardMorphism, eps: bool, b, alphabet: Optional[Alphabet] = None) -> PropValue:
    """Image of ``<eps, b>`` under ``m``, as a unary or non-unary property value."""
    to_unary = m.is_unary(alphabet)
    if b.is_bottom:
        return Unary(unary(eps)) if to_unary else NonUnary(eps, BOTTOM_BOUND)
    if m.is_trivial(alphabet):
        return Unary(unary(True)) if to_unary else EPS_ONLY
    if b.constant is not None:
        img = m.apply(b.constant)
        if not img:
            return Unary(unary(True)) if to_unary else EPS_ONLY
        if to_unary:
            return Unary(unary(eps, len(img), len(img) + 1))
        return NonUnary(eps, make_bound(constant=img))
    p = m.apply(b.prefix) if b.prefix else ""
    s = m.apply(b.suffix) if b.suffix else ""
    fs = [m.apply(f) for f in b.factors]
    words = [x for x in [p, s] + fs if x]
    img_eps = eps or (not words and m.is_erasing(alphabet))
    if to_unary:
        lo = max([len(p) if p else 0, len(s) if s else 0] + [len(f) for f in fs])
        return Unary(unary(img_eps, max(lo, 1), INF))
    return NonUnary(img_eps, make_bound(prefix=p or None, suffix=s or None, factors=fs))


def apply_to_unary(m: StandardMorphism, letter: str, u) -> Unary:
    """Image of a unary property whose words are powers of ``letter``."""
    if u.is_bottom:
        return Unary(u)
    if not m.image(letter):
        return Unary(unary(True) if (u.eps or u.has_interval) else u)
    return Unary(u)


def apply_to_prop(m: StandardMorphism, prop: PropValue, source_letter: Optional[str] = None,
                  alphabet: Optional[Alphabet] = None) -> PropValue:
    if isinstance(prop, Unary):
        return apply_to_unary(m, source_letter or LEN_LETTER, prop.interval)
    return apply_to_bound(m, prop.eps, prop.bound, alphabet)


def all_standard_morphisms(letters: str) -> list[StandardMorphism]:
    """Every standard morphism over a finite alphabet (set partitions x erase choice)."""
    alph = Alphabet(letters)
    letters = list(alph.letters)
    out = set()

    def partitions(xs):
        if not xs:
            yield []
            return
        head, rest = xs[0], xs[1:]
        for p in partitions(rest):
            yield [[head]] + p
            for i in range(len(p)):
                yield p[:i] + [[head] + p[i]] + p[i + 1:]

    for part in partitions(letters):
        n = len(part)
        for mask in range(1 << n):
            table = {}
            for i, cls in enumerate(part):
                img = "" if mask >> i & 1 else min(cls)
                for c in cls:
                    table[c] = img
            out.add(_canonical(table, "id", alph))
    return sorted(out, key=StandardMorphism.sort_key)
