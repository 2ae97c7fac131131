"""Concrete semantics of the string operations and their abstract transformers,
plus the guard refinements used by the interpreter."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .context import DEFAULT_CTX, Ctx
from .morphism import IDENTITY, StandardMorphism
from .objects import (
    BOTTOM_OBJECT,
    StringObject,
    bound_min_len,
    combined_morphisms,
    component,
    constant_object,
    eps_object,
    light_reduce,
    make_object,
    object_join,
    object_meet,
    prune,
    with_value,
)
from .props import (
    INF,
    BOTTOM_BOUND,
    NONUNARY_TOP,
    TOP_BOUND,
    LowerBound,
    NonUnary,
    PropValue,
    Unary,
    UnaryInterval,
    bound_join,
    unary_join,
    make_bound,
    unary,
)
from .words import longest_overlap

RELATIONS = ("==", "!=", "<", "<=", ">", ">=")
NEGATED = {"==": "!=", "!=": "==", "<": ">=", ">=": "<", ">": "<=", "<=": ">"}


# ---------------------------------------------------------------- integers


@dataclass(frozen=True)
class IntAbstract:
    """``({-1} if neg_one) U [lo, hi)``; ``lo is None`` means no non-negative part."""

    neg_one: bool = True
    lo: Optional[int] = 0
    hi: float = INF

    @property
    def is_bottom(self) -> bool:
        return not self.neg_one and self.lo is None

    @property
    def has_nonneg(self) -> bool:
        return self.lo is not None

    def contains(self, n: int) -> bool:
        if n == -1 and self.neg_one:
            return True
        return self.lo is not None and self.lo <= n < self.hi

    def constant(self) -> Optional[int]:
        if self.neg_one and self.lo is None:
            return -1
        if not self.neg_one and self.lo is not None and self.hi == self.lo + 1:
            return self.lo
        return None

    def __repr__(self):
        parts = ["-1"] if self.neg_one else []
        if self.lo is not None:
            parts.append(f"[{self.lo},{'inf' if self.hi == INF else int(self.hi)})")
        return "Int(" + (" U ".join(parts) or "BOT") + ")"


def int_abstract(neg_one: bool, lo: Optional[int] = None, hi: float = INF) -> IntAbstract:
    if lo is not None:
        lo = max(0, lo)
        if lo >= hi:
            lo = None
    return IntAbstract(neg_one, lo, hi if lo is not None else INF)


def int_exact(k: int) -> IntAbstract:
    if k < 0:
        raise ValueError("only -1 and non-negative integers are index results")
    return IntAbstract(False, k, k + 1)


INT_TOP = IntAbstract()
INT_BOTTOM = IntAbstract(False, None)


def int_join(a: IntAbstract, b: IntAbstract) -> IntAbstract:
    if a.lo is None:
        lo, hi = b.lo, b.hi
    elif b.lo is None:
        lo, hi = a.lo, a.hi
    else:
        lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
    return int_abstract(a.neg_one or b.neg_one, lo, hi)


def holds(n: int, rel: str, k: int) -> bool:
    return {"==": n == k, "!=": n != k, "<": n < k, "<=": n <= k, ">": n > k, ">=": n >= k}[rel]


def int_restrict(a: IntAbstract, rel: str, k: int) -> IntAbstract:
    """Over-approximation of ``{n in a : n rel k}``."""
    neg = a.neg_one and holds(-1, rel, k)
    if a.lo is None:
        return int_abstract(neg)
    lo, hi = a.lo, a.hi
    if rel == "==":
        lo, hi = max(lo, k), min(hi, k + 1)
    elif rel == "<":
        hi = min(hi, k)
    elif rel == "<=":
        hi = min(hi, k + 1)
    elif rel == ">":
        lo = max(lo, k + 1)
    elif rel == ">=":
        lo = max(lo, k)
    elif rel == "!=":
        if lo == k:
            lo += 1
        if hi == k + 1:
            hi = k
    return int_abstract(neg, lo, hi)


# ---------------------------------------------------------------- concrete semantics


def c_concat(w1: str, w2: str) -> str:
    return w1 + w2


def c_substring(w: str, n: int) -> str:
    if n <= 0:
        return w
    return w[n:]


def c_index_of(w1: str, w2: str) -> int:
    return w1.find(w2)


def c_replace(w1: str, w2: str, w3: str) -> str:
    if w2 == "":
        return w3 + w1
    return w1.replace(w2, w3, 1)


def c_char_at(w: str, n: int) -> str:
    return w[n] if 0 <= n < len(w) else ""


_CONCRETE = {"concat": c_concat, "substring": c_substring, "indexOf": c_index_of,
             "replace": c_replace, "charAt": c_char_at}
_ARITY = {"concat": 2, "substring": 2, "indexOf": 2, "replace": 3, "charAt": 2}


def concrete_eval(op: str, *args):
    if op not in _CONCRETE:
        raise ValueError(f"unknown operation {op!r}")
    if len(args) != _ARITY[op]:
        raise ValueError(f"{op} takes {_ARITY[op]} arguments, got {len(args)}")
    return _CONCRETE[op](*args)


# ---------------------------------------------------------------- helpers


def _exact_word(o: StringObject) -> Optional[str]:
    """The single word of ``o`` when its concretization is a singleton."""
    if o.is_bottom:
        return None
    b = o.value.bound
    if b.is_bottom:
        return "" if o.value.eps else None
    if b.constant is not None and not o.eps:
        return b.constant
    return None


def _exact_prop(p: PropValue) -> Optional[str]:
    if isinstance(p, NonUnary) and not p.eps and not p.bound.is_bottom and p.bound.constant is not None:
        return p.bound.constant
    return None


def _start(b: LowerBound) -> str:
    """A word every non-empty member of ``b`` starts with."""
    if b.is_bottom:
        return ""
    return b.constant if b.constant is not None else (b.prefix or "")


def _end(b: LowerBound) -> str:
    if b.is_bottom:
        return ""
    return b.constant if b.constant is not None else (b.suffix or "")


def _words_in(b: LowerBound) -> list[str]:
    return [] if b.is_bottom else b.words()


def _pieces(u: UnaryInterval) -> list[tuple[int, float]]:
    """Half-open ranges ``[lo, hi)`` of a length set, with ``{0}`` as ``[0, 1)``."""
    out = [(0, 1)] if u.eps else []
    if u.has_interval:
        out.append((u.lo, u.hi))
    return out


def _from_range(lo: int, hi: float) -> UnaryInterval:
    """The length set ``[lo, hi)`` where ``lo`` may be zero."""
    if hi <= max(lo, 0):
        return unary(False)
    return unary(lo <= 0, max(lo, 1), hi)


def _add_intervals(u1: UnaryInterval, u2: UnaryInterval) -> UnaryInterval:
    """Lengths of concatenations, with eps standing for length zero."""
    out = unary(False)
    for a_lo, a_hi in _pieces(u1):
        for b_lo, b_hi in _pieces(u2):
            out = unary_join(out, _from_range(a_lo + b_lo, a_hi + b_hi - 1))
    return out


# ---------------------------------------------------------------- concat


def concat_bound(b1: LowerBound, b2: LowerBound) -> LowerBound:
    """Bound of ``{xy}`` for non-empty ``x`` in ``b1`` and ``y`` in ``b2``."""
    if b1.is_bottom or b2.is_bottom:
        return BOTTOM_BOUND
    if b1.constant is not None and b2.constant is not None:
        return make_bound(constant=b1.constant + b2.constant)
    prefix = b1.constant + _start(b2) if b1.constant is not None else b1.prefix
    suffix = _end(b1) + b2.constant if b2.constant is not None else b2.suffix
    factors = set(_words_in(b1)) | set(_words_in(b2))
    seam = _end(b1) + _start(b2)
    if seam:
        factors.add(seam)
    return make_bound(prefix=prefix, suffix=suffix, factors=factors)


def concat_prop(p1: PropValue, p2: PropValue) -> PropValue:
    if isinstance(p1, Unary):
        return Unary(_add_intervals(p1.interval, p2.interval))
    if p1.is_empty or p2.is_empty:
        return NonUnary(False, BOTTOM_BOUND)
    b = concat_bound(p1.bound, p2.bound)
    if p1.eps:
        b = bound_join(b, p2.bound)
    if p2.eps:
        b = bound_join(b, p1.bound)
    return NonUnary(p1.eps and p2.eps, b)


def abs_concat(o1: StringObject, o2: StringObject, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    """Concatenation per property over the combined morphisms, then light reduction."""
    if o1.is_bottom or o2.is_bottom:
        return BOTTOM_OBJECT
    w1, w2 = _exact_word(o1), _exact_word(o2)
    if w1 is not None and w2 is not None:
        return constant_object(w1 + w2, o1.universe | o2.universe)
    etas = combined_morphisms(o1, o2, ctx)
    customs = {eta: concat_prop(component(o1, eta, ctx), component(o2, eta, ctx)) for eta in etas}
    value = concat_prop(o1.value, o2.value)
    length = _add_intervals(o1.length, o2.length)
    return light_reduce(make_object(value, length, customs, ctx, etas), ctx)


# ---------------------------------------------------------------- substring


def _drop_front(b: LowerBound, j: Optional[int], min_len: float, jmax: float) -> LowerBound:
    """Bound of the words ``w[j:]`` (kept non-empty) for ``w`` in ``b``.

    ``j`` is the exact number of dropped letters when known; otherwise at most
    ``jmax`` letters are dropped.  ``min_len`` is a lower bound on ``|w|``.
    """
    if b.is_bottom:
        return BOTTOM_BOUND
    if b.constant is not None and j is not None:
        rest = b.constant[j:]
        return make_bound(constant=rest) if rest else BOTTOM_BOUND
    prefix = None
    if j is not None:
        start = _start(b)
        prefix = start[j:] if len(start) > j else None
    suffix = None
    end = _end(b)
    dropped = j if j is not None else jmax
    keep = min_len - dropped
    if end and keep >= 1 and keep != INF:
        suffix = end[-int(keep):] if keep < len(end) else end
    return make_bound(prefix=prefix, suffix=suffix)


def _dropped_image(o: StringObject, sigma: StandardMorphism, k: int) -> Optional[int]:
    """``|sigma(w[:k])|`` when it is the same for every long enough ``w`` in ``o``."""
    start = _start(o.value.bound)
    if len(start) < k:
        return None
    return len(sigma.apply(start[:k]))


def abs_substring(o: StringObject, n: IntAbstract, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    """Suffix from position ``n``; ``n`` must already exclude -1."""
    if n.neg_one:
        raise ValueError("substring index must be refined to non-negative values first")
    if o.is_bottom or n.is_bottom:
        return BOTTOM_OBJECT
    if n.constant() == 0:
        return o
    w = _exact_word(o)
    if w is not None and n.constant() is not None:
        return constant_object(c_substring(w, n.constant()), o.universe)
    ln = o.length
    k = n.constant()
    nlo, nmax = n.lo, n.hi - 1
    # may a word be consumed entirely / survive non-empty?
    res_eps = ln.eps or (ln.has_interval and nmax >= ln.lo)
    survives = ln.has_interval and ln.max_len() > nlo
    if survives:
        lo = max(1, ln.lo - nmax) if nmax != INF else 1
        length = unary(res_eps, lo, ln.hi - nlo)
    else:
        length = unary(res_eps)
    if not survives:
        return make_object(NonUnary(True, BOTTOM_BOUND), length, {}, ctx, o.universe) if res_eps else BOTTOM_OBJECT
    vb = o.value.bound
    min_len = ln.lo if ln.has_interval else INF
    value = NonUnary(res_eps, _drop_front(vb, k, min_len, nmax))
    customs = {}
    for sigma in sorted(o.universe, key=lambda m: m.sort_key()):
        p = component(o, sigma, ctx)
        j = _dropped_image(o, sigma, k) if k is not None else None
        erasing = sigma.is_erasing(ctx.alphabet)
        if isinstance(p, Unary):
            iv = p.interval
            if j is not None and iv.has_interval:
                customs[sigma] = Unary(unary(True, iv.lo - j, iv.hi - j))
            elif iv.has_interval:
                customs[sigma] = Unary(unary(True, 1, iv.hi))
            continue
        if p.bound.is_bottom:
            customs[sigma] = p
            continue
        pmin = bound_min_len(p.bound)
        if not erasing:
            jj, jmax, pmin = k, nmax, max(pmin, min_len)
        else:
            jj, jmax = j, INF
        b = _drop_front(p.bound, jj, pmin, jmax)
        exact_rest = jj is not None and pmin - jj >= 1 and pmin != INF
        eps = p.eps or res_eps or not exact_rest or b.is_bottom
        customs[sigma] = NonUnary(eps, b)
    return prune(make_object(value, length, customs, ctx, o.universe), ctx)


# ---------------------------------------------------------------- indexOf


def _guaranteed_factor(o: StringObject, w: str) -> bool:
    """Every word of ``o`` contains ``w``."""
    if o.is_bottom:
        return True
    if w == "":
        return True
    if o.eps or o.value.bound.is_bottom:
        return False
    return any(w in f for f in o.value.bound.words())


def _starts_compatible(a: str, b: str) -> bool:
    n = min(len(a), len(b))
    return a[:n] == b[:n]


def abs_index_of(o1: StringObject, o2: StringObject, ctx: Ctx = DEFAULT_CTX) -> IntAbstract:
    if o1.is_bottom or o2.is_bottom:
        return INT_BOTTOM
    w1, w2 = _exact_word(o1), _exact_word(o2)
    if w1 is not None and w2 is not None:
        r = c_index_of(w1, w2)
        return int_abstract(True) if r < 0 else int_exact(r)
    if w2 == "":
        return int_exact(0)
    # occurrence positions lie in [0, |w1| - |w2|]
    max1 = o1.length.max_len()
    min2 = o2.length.min_len() or 0
    hi = max1 - min2 + 1
    neg = True
    lo = 0
    if w2 is not None and _guaranteed_factor(o1, w2):
        neg = False
        if _start(o1.value.bound).startswith(w2):
            hi = min(hi, 1)
    sigmas = [IDENTITY] + sorted(o1.universe | o2.universe, key=lambda m: m.sort_key())
    for sigma in sigmas:
        img2 = _exact_prop(component(o2, sigma, ctx))
        if not img2:
            continue
        p1 = component(o1, sigma, ctx)
        if not isinstance(p1, NonUnary):
            continue
        if p1.bound.is_bottom:
            # every sigma-image of o1 is empty, so no occurrence is possible
            neg, lo = True, None
            break
        if not _starts_compatible(_start(p1.bound), img2):
            lo = max(lo, 1)
        c1 = p1.bound.constant
        if c1 is not None and img2 not in c1:
            lo = None
            break
    if lo is None or hi <= lo:
        return int_abstract(True) if neg or lo is None else INT_BOTTOM
    return int_abstract(neg, lo, hi)


# ---------------------------------------------------------------- replace


def _first_possible_start(prefix: str, w: str) -> int:
    """Least position where ``w`` could start in a word beginning with ``prefix``."""
    for t in range(len(prefix) + 1):
        if _starts_compatible(prefix[t:], w):
            return t
    return len(prefix)


def _replace_degraded(o1: StringObject, o2: StringObject, o3: StringObject, ctx: Ctx) -> StringObject:
    l1, l2, l3 = o1.length, o2.length, o3.length
    mn1, mx1 = l1.min_len(), l1.max_len()
    mn2, mx2 = l2.min_len(), l2.max_len()
    mn3, mx3 = l3.min_len(), l3.max_len()
    occ_lo = (max(0, mn1 - mx2) if mx2 != INF else 0) + mn3
    occ_hi = mx1 - mn2 + mx3
    lo, hi = min(mn1, occ_lo), max(mx1, occ_hi)
    length = unary(lo == 0, max(lo, 1), hi + 1)
    return make_object(NONUNARY_TOP, length, {}, ctx, o1.universe)


def abs_replace(o1: StringObject, o2: StringObject, o3: StringObject, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    """Replace the first occurrence of the constant ``o2`` by the constant ``o3``."""
    if o1.is_bottom or o2.is_bottom or o3.is_bottom:
        return BOTTOM_OBJECT
    w2, w3 = _exact_word(o2), _exact_word(o3)
    if w2 is None or w3 is None:
        return _replace_degraded(o1, o2, o3, ctx)
    w1 = _exact_word(o1)
    if w1 is not None:
        return constant_object(c_replace(w1, w2, w3), o1.universe | o2.universe | o3.universe)
    if w2 == "":
        return abs_concat(o3, o1, ctx)
    idx = abs_index_of(o1, o2, ctx)
    branches = []
    if idx.neg_one:
        branches.append(o1)
    if idx.has_nonneg:
        occ = _replace_occurrence(o1, w2, w3, ctx)
        if not occ.is_bottom:
            branches.append(occ)
    out = BOTTOM_OBJECT
    for b in branches:
        out = object_join(out, b, ctx)
    return out


def _replace_occurrence(o1: StringObject, w2: str, w3: str, ctx: Ctx) -> StringObject:
    """The words ``u1 w3 u2`` for ``u1 w2 u2`` in ``o1`` with ``u1 w2`` the first occurrence."""
    b = o1.value.bound
    ln = o1.length
    if b.is_bottom or not ln.has_interval or ln.max_len() < len(w2):
        return BOTTOM_OBJECT
    if b.constant is not None:
        return constant_object(c_replace(b.constant, w2, w3), o1.universe) if w2 in b.constant else BOTTOM_OBJECT
    start = _start(b)
    t = _first_possible_start(start, w2)
    pinned = start[t:t + len(w2)] == w2
    prefix = start[:t] + w3 + start[t + len(w2):] if pinned else start[:t]
    suffix = None
    s = b.suffix
    if s:
        clear_of_suffix = w2 not in s and longest_overlap(w2, s) == 0
        before_suffix = pinned and ln.lo >= t + len(w2) + len(s)
        if clear_of_suffix or before_suffix:
            suffix = s
    factors = {f for f in b.factors
               if w2 not in f and f not in w2 and longest_overlap(f, w2) == 0 and longest_overlap(w2, f) == 0}
    if w3:
        factors.add(w3)
    d = len(w3) - len(w2)
    lo = max(ln.lo, len(w2)) + d
    hi = ln.hi + d
    may_be_empty = w3 == "" and o1.contains(w2)
    length = unary(may_be_empty, lo, hi)
    value = NonUnary(may_be_empty, make_bound(prefix=prefix or None, suffix=suffix, factors=factors))
    if value.is_empty or length.is_bottom:
        return BOTTOM_OBJECT
    customs = {}
    for sigma in sorted(o1.universe, key=lambda m: m.sort_key()):
        p = component(o1, sigma, ctx)
        i2, i3 = sigma.apply(w2), sigma.apply(w3)
        if isinstance(p, Unary):
            # |sigma(u1 w3 u2)| = |sigma(w1)| - |sigma(w2)| + |sigma(w3)|
            shifted = unary(False)
            for x_lo, x_hi in _pieces(p.interval):
                shifted = unary_join(shifted, _from_range(max(x_lo, len(i2)) - len(i2) + len(i3),
                                                          x_hi - len(i2) + len(i3)))
            customs[sigma] = Unary(shifted)
        elif i2 == i3:
            customs[sigma] = p
    return light_reduce(make_object(value, length, customs, ctx, o1.universe), ctx)


# ---------------------------------------------------------------- charAt


def abs_char_at(o: StringObject, n: IntAbstract, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    if n.neg_one:
        raise ValueError("charAt index must be refined to non-negative values first")
    if o.is_bottom or n.is_bottom:
        return BOTTOM_OBJECT
    ln = o.length
    k = n.constant()
    w = _exact_word(o)
    if w is not None and k is not None:
        return constant_object(c_char_at(w, k), o.universe)
    in_range = ln.has_interval and ln.max_len() > n.lo
    out_of_range = ln.eps or not ln.has_interval or n.hi - 1 >= ln.lo
    if not in_range:
        return eps_object(o.universe)
    bound = TOP_BOUND
    start = _start(o.value.bound)
    if k is not None and k < len(start):
        bound = make_bound(constant=start[k])
    return prune(make_object(NonUnary(out_of_range, bound), unary(out_of_range, 1, 2), {}, ctx,
                             o.universe), ctx)


# ---------------------------------------------------------------- assume transformers


def _nonempty_object(ctx: Ctx, universe) -> StringObject:
    return make_object(NonUnary(False, TOP_BOUND), unary(False, 1), {}, ctx, universe)


def assume_truthy(o: StringObject, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    return object_meet(o, _nonempty_object(ctx, o.universe), ctx)


def assume_falsy(o: StringObject, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    return object_meet(o, make_object(NonUnary(True, BOTTOM_BOUND), unary(True), {}, ctx, o.universe), ctx)


def assume_index_cmp(o1: StringObject, o2: StringObject, rel: str, k: int,
                     ctx: Ctx = DEFAULT_CTX) -> tuple[StringObject, StringObject]:
    """Refine ``o1``, ``o2`` under ``o1.indexOf(o2) rel k``; ``(BOT, BOT)`` when impossible."""
    if rel not in RELATIONS:
        raise ValueError(f"unknown relation {rel!r}")
    feasible = int_restrict(abs_index_of(o1, o2, ctx), rel, k)
    if feasible.is_bottom:
        return BOTTOM_OBJECT, BOTTOM_OBJECT
    w2 = _exact_word(o2)
    if feasible.neg_one or w2 is None or w2 == "":
        return o1, o2
    r1 = o1
    if feasible.constant() == 0:
        r1 = with_value(o1, make_bound(prefix=w2), ctx)
        r1 = assume_truthy(r1, ctx)
    else:
        r1 = assume_truthy(with_value(o1, make_bound(factors=[w2]), ctx), ctx)
    if r1.is_bottom:
        return BOTTOM_OBJECT, BOTTOM_OBJECT
    return r1, o2
