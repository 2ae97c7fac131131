"""Single-property lattices: lower bounds, unary intervals and their products."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from ._hashing import hash_once
from .words import (
    FactorCode,
    antichain,
    antichain_insert,
    common_maximal_factors,
    common_prefix,
    common_suffix,
)

INF = math.inf


class _Bottom:
    """Sentinel for the bottom of the prefix/suffix lattices."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "BOT"


BOT = _Bottom()


# ---------------------------------------------------------------- prefix / suffix


def prefix_join(p1, p2):
    """Longest common prefix; ``None`` is top, ``BOT`` is bottom."""
    if p1 is BOT:
        return p2
    if p2 is BOT:
        return p1
    if p1 is None or p2 is None:
        return None
    return common_prefix(p1, p2) or None


def prefix_meet(p1, p2):
    if p1 is BOT or p2 is BOT:
        return BOT
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    if p1.startswith(p2):
        return p1
    if p2.startswith(p1):
        return p2
    return BOT


def suffix_join(s1, s2):
    if s1 is BOT:
        return s2
    if s2 is BOT:
        return s1
    if s1 is None or s2 is None:
        return None
    return common_suffix(s1, s2) or None


def suffix_meet(s1, s2):
    if s1 is BOT or s2 is BOT:
        return BOT
    if s1 is None:
        return s2
    if s2 is None:
        return s1
    if s1.endswith(s2):
        return s1
    if s2.endswith(s1):
        return s2
    return BOT


# ---------------------------------------------------------------- lower bounds


@hash_once
@dataclass(frozen=True)
class LowerBound:
    """Conjunction of the equations Z=constant, Z=prefix.Y, Z=X.suffix, Z=X.w.Y.

    Absent fields are top.  The concretization never contains the empty word;
    that possibility is tracked by the eps flag of the enclosing property.
    """

    is_bottom: bool = False
    constant: Optional[str] = None
    prefix: Optional[str] = None
    suffix: Optional[str] = None
    factors: FactorCode = field(default_factory=frozenset)

    @property
    def is_top(self) -> bool:
        return not self.is_bottom and self.constant is None and self.prefix is None \
            and self.suffix is None and not self.factors

    def words(self) -> list[str]:
        """Every constraint word mentioned by the bound."""
        out = list(self.factors)
        for w in (self.constant, self.prefix, self.suffix):
            if w:
                out.append(w)
        return out

    def satisfied_by(self, w: str) -> bool:
        if self.is_bottom or not w:
            return False
        if self.constant is not None and w != self.constant:
            return False
        if self.prefix and not w.startswith(self.prefix):
            return False
        if self.suffix and not w.endswith(self.suffix):
            return False
        return all(f in w for f in self.factors)

    def __repr__(self):
        if self.is_bottom:
            return "LowerBound(BOT)"
        parts = []
        if self.constant is not None:
            parts.append(f"const={self.constant!r}")
        if self.prefix is not None:
            parts.append(f"prefix={self.prefix!r}")
        if self.suffix is not None:
            parts.append(f"suffix={self.suffix!r}")
        if self.factors:
            parts.append("factors={" + ",".join(sorted(self.factors)) + "}")
        return "LowerBound(" + ", ".join(parts) + ")"


TOP_BOUND = LowerBound()
BOTTOM_BOUND = LowerBound(is_bottom=True)


def make_bound(constant=None, prefix=None, suffix=None, factors=()) -> LowerBound:
    """Build and basically reduce a bound; ``BOT`` in any slot gives bottom."""
    if BOT in (constant, prefix, suffix):
        return BOTTOM_BOUND
    return basic_reduce(LowerBound(False, constant, prefix or None, suffix or None,
                                   antichain(factors)))


def basic_reduce(b: LowerBound) -> LowerBound:
    if b.is_bottom:
        return BOTTOM_BOUND
    c = b.constant
    if c is not None:
        if not c:
            return BOTTOM_BOUND
        if b.prefix and not c.startswith(b.prefix):
            return BOTTOM_BOUND
        if b.suffix and not c.endswith(b.suffix):
            return BOTTOM_BOUND
        if any(f not in c for f in b.factors):
            return BOTTOM_BOUND
        return LowerBound(False, c, c, c, frozenset([c]))
    code = frozenset(f for f in b.factors if f)
    for w in (b.prefix, b.suffix):
        if w:
            code = antichain_insert(code, w)
    return LowerBound(False, None, b.prefix or None, b.suffix or None, code)


def bound_join(b1: LowerBound, b2: LowerBound) -> LowerBound:
    if b1.is_bottom:
        return b2
    if b2.is_bottom:
        return b1
    const = b1.constant if b1.constant == b2.constant else None
    return basic_reduce(LowerBound(
        False,
        const,
        prefix_join(b1.prefix, b2.prefix),
        suffix_join(b1.suffix, b2.suffix),
        common_maximal_factors(b1.factors, b2.factors),
    ))


def bound_meet(b1: LowerBound, b2: LowerBound) -> LowerBound:
    if b1.is_bottom or b2.is_bottom:
        return BOTTOM_BOUND
    if b1.constant is not None and b2.constant is not None and b1.constant != b2.constant:
        return BOTTOM_BOUND
    const = b1.constant if b1.constant is not None else b2.constant
    p = prefix_meet(b1.prefix, b2.prefix)
    s = suffix_meet(b1.suffix, b2.suffix)
    if p is BOT or s is BOT:
        return BOTTOM_BOUND
    return basic_reduce(LowerBound(False, const, p, s, antichain(b1.factors | b2.factors)))


def bound_leq(b1: LowerBound, b2: LowerBound) -> bool:
    """Syntactic order: ``b1`` carries at least the constraints of ``b2``."""
    return bound_meet(b1, b2) == basic_reduce(b1)


# ---------------------------------------------------------------- unary intervals


@hash_once
@dataclass(frozen=True)
class UnaryInterval:
    """``({eps} if eps) U {n : lo <= n < hi}`` with ``lo >= 1``; ``lo is None`` means no interval."""

    is_bottom: bool = False
    eps: bool = False
    lo: Optional[int] = None
    hi: float = INF

    @property
    def has_interval(self) -> bool:
        return self.lo is not None

    def contains(self, n: int) -> bool:
        if self.is_bottom:
            return False
        if n == 0:
            return self.eps
        return self.lo is not None and self.lo <= n < self.hi

    def min_len(self) -> Optional[int]:
        if self.is_bottom:
            return None
        if self.eps:
            return 0
        return self.lo

    def max_len(self) -> float:
        """Largest member (``INF`` if unbounded, ``-1`` if empty)."""
        if self.is_bottom:
            return -1
        if self.lo is not None:
            return self.hi - 1
        return 0 if self.eps else -1

    def __repr__(self):
        if self.is_bottom:
            return "Unary(BOT)"
        iv = "" if self.lo is None else f"[{self.lo},{'inf' if self.hi == INF else self.hi})"
        return f"Unary({'eps ' if self.eps else ''}{iv})"


UNARY_BOTTOM = UnaryInterval(is_bottom=True)
UNARY_TOP = UnaryInterval(False, True, 1, INF)


def unary(eps: bool, lo: Optional[int] = None, hi: float = INF) -> UnaryInterval:
    """Normalize: clamp ``lo`` to 1, drop empty intervals, collapse to bottom."""
    if lo is not None:
        lo = max(1, lo)
        if hi is None:
            hi = INF
        if lo >= hi:
            lo = None
    if lo is None:
        hi = INF
        if not eps:
            return UNARY_BOTTOM
    return UnaryInterval(False, bool(eps), lo, hi)


def unary_exact(n: int) -> UnaryInterval:
    return unary(True) if n == 0 else unary(False, n, n + 1)


def unary_join(u1: UnaryInterval, u2: UnaryInterval) -> UnaryInterval:
    if u1.is_bottom:
        return u2
    if u2.is_bottom:
        return u1
    if u1.lo is None:
        lo, hi = u2.lo, u2.hi
    elif u2.lo is None:
        lo, hi = u1.lo, u1.hi
    else:
        lo, hi = min(u1.lo, u2.lo), max(u1.hi, u2.hi)
    return unary(u1.eps or u2.eps, lo, hi)


def unary_meet(u1: UnaryInterval, u2: UnaryInterval) -> UnaryInterval:
    if u1.is_bottom or u2.is_bottom:
        return UNARY_BOTTOM
    if u1.lo is None or u2.lo is None:
        lo, hi = None, INF
    else:
        lo, hi = max(u1.lo, u2.lo), min(u1.hi, u2.hi)
    return unary(u1.eps and u2.eps, lo, hi)


def unary_leq(u1: UnaryInterval, u2: UnaryInterval) -> bool:
    return unary_meet(u1, u2) == u1


# ---------------------------------------------------------------- property values


@hash_once
@dataclass(frozen=True)
class NonUnary:
    """Property over a non-unary image alphabet: eps flag times a lower bound."""

    eps: bool
    bound: LowerBound

    @property
    def is_empty(self) -> bool:
        return not self.eps and self.bound.is_bottom

    @property
    def is_top(self) -> bool:
        return self.eps and self.bound.is_top

    def contains(self, w: str) -> bool:
        return self.eps if not w else self.bound.satisfied_by(w)


@hash_once
@dataclass(frozen=True)
class Unary:
    """Property over a unary image alphabet, stored as lengths."""

    interval: UnaryInterval

    @property
    def is_empty(self) -> bool:
        return self.interval.is_bottom

    @property
    def is_top(self) -> bool:
        return self.interval == UNARY_TOP

    @property
    def eps(self) -> bool:
        return not self.interval.is_bottom and self.interval.eps

    def contains(self, w: str) -> bool:
        return self.interval.contains(len(w))


PropValue = Union[NonUnary, Unary]

NONUNARY_TOP = NonUnary(True, TOP_BOUND)
NONUNARY_EMPTY = NonUnary(False, BOTTOM_BOUND)
EPS_ONLY = NonUnary(True, BOTTOM_BOUND)


def prop_top(is_unary: bool) -> PropValue:
    return Unary(UNARY_TOP) if is_unary else NONUNARY_TOP


def prop_join(p1: PropValue, p2: PropValue) -> PropValue:
    if isinstance(p1, Unary):
        return Unary(unary_join(p1.interval, p2.interval))
    return NonUnary(p1.eps or p2.eps, bound_join(p1.bound, p2.bound))


def prop_meet(p1: PropValue, p2: PropValue) -> PropValue:
    if isinstance(p1, Unary):
        return Unary(unary_meet(p1.interval, p2.interval))
    return NonUnary(p1.eps and p2.eps, bound_meet(p1.bound, p2.bound))


def prop_leq(p1: PropValue, p2: PropValue) -> bool:
    return prop_meet(p1, p2) == p1
