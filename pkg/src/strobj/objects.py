"""Abstract string objects: the value, the length and any number of custom
morphism-indexed properties, kept in reduced form."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterable, Optional

from ._hashing import hash_once
from .context import DEFAULT_CTX, Ctx
from .morphism import (
    IDENTITY,
    LENGTH,
    LEN_LETTER,
    StandardMorphism,
    apply_to_bound,
    apply_to_unary,
    join as morph_join,
    leq,
    transfers,
)
from .perfect import cross_reduction_threshold, perfect_reduce_budgeted
from .props import (
    INF,
    BOTTOM_BOUND,
    EPS_ONLY,
    NONUNARY_EMPTY,
    NONUNARY_TOP,
    UNARY_BOTTOM,
    UNARY_TOP,
    LowerBound,
    NonUnary,
    PropValue,
    Unary,
    UnaryInterval,
    bound_meet,
    make_bound,
    prop_join,
    prop_meet,
    prop_top,
    unary,
    unary_meet,
)
from .standalone import standalone_reduce
from .words import factors_of, letters_of, longest_overlap

MAX_PASSES = 50


@hash_once
@dataclass(frozen=True)
class StringObject:
    is_bottom: bool = False
    value: NonUnary = NONUNARY_TOP
    length: UnaryInterval = UNARY_TOP
    customs: tuple = ()  # ((StandardMorphism, PropValue), ...) sorted by morphism
    universe: frozenset = frozenset()  # tracked morphisms; stored customs are a subset

    def custom_map(self) -> dict:
        return dict(self.customs)

    def morphisms(self) -> list[StandardMorphism]:
        return [m for m, _ in self.customs]

    @property
    def eps(self) -> bool:
        return not self.is_bottom and self.value.eps and self.length.eps

    def contains(self, w: str) -> bool:
        if self.is_bottom:
            return False
        if not self.value.contains(w) or not self.length.contains(len(w)):
            return False
        return all(p.contains(m.apply(w)) for m, p in self.customs)


BOTTOM_OBJECT = StringObject(True, NONUNARY_EMPTY, UNARY_BOTTOM, ())
TOP_OBJECT = StringObject()


def _is_empty(p: PropValue) -> bool:
    return p.is_empty


def _key(m: StandardMorphism):
    return m.sort_key()


def _trackable(m: StandardMorphism, ctx: Ctx) -> bool:
    if m.is_identity or m.is_length or m.is_trivial(ctx.alphabet):
        return False
    # a non-erasing unary morphism carries exactly the length
    return not (m.is_unary(ctx.alphabet) and not m.is_erasing(ctx.alphabet))


def make_object(value: Optional[NonUnary] = None, length: Optional[UnaryInterval] = None,
                customs: Optional[dict] = None, ctx: Ctx = DEFAULT_CTX,
                universe: Iterable[StandardMorphism] = ()) -> StringObject:
    """Assemble an object without reducing it (trivial customs are dropped)."""
    value = NONUNARY_TOP if value is None else value
    length = UNARY_TOP if length is None else length
    cs = {m: p for m, p in (customs or {}).items() if _trackable(m, ctx)}
    if value.is_empty or length.is_bottom or any(p.is_empty for p in cs.values()):
        return BOTTOM_OBJECT
    uni = frozenset(m for m in universe if _trackable(m, ctx)) | frozenset(cs)
    return StringObject(False, value, length, tuple(sorted(cs.items(), key=lambda kv: _key(kv[0]))), uni)


def close_universe(ms: Iterable[StandardMorphism], ctx: Ctx = DEFAULT_CTX) -> frozenset:
    """Close a morphism set under joins (dropping identity, length and the top morphism)."""
    out = {m for m in ms if _trackable(m, ctx)}
    frontier = list(out)
    while frontier:
        new = []
        for a in frontier:
            for b in list(out):
                j = morph_join(a, b, ctx.alphabet)
                if _trackable(j, ctx) and j not in out:
                    out.add(j)
                    new.append(j)
        frontier = new
    return frozenset(out)


def constant_object(w: str, universe: frozenset = frozenset()) -> StringObject:
    """The atom for ``w``; ``universe`` lists the morphisms tracked alongside (already trackable)."""
    if not w:
        return eps_object(universe)
    return StringObject(False, NonUnary(False, make_bound(constant=w)), unary(False, len(w), len(w) + 1), (),
                        frozenset(universe))


def eps_object(universe: frozenset = frozenset()) -> StringObject:
    return StringObject(False, EPS_ONLY, unary(True), (), frozenset(universe))


# ---------------------------------------------------------------- components


def _stored(o: StringObject) -> dict:
    out = {IDENTITY: o.value, LENGTH: Unary(o.length)}
    out.update(o.customs)
    return out


def _unary_letter(m: StandardMorphism, ctx: Ctx) -> str:
    return LEN_LETTER if m.is_length else (m.unary_letter(ctx.alphabet) or LEN_LETTER)


def image(src: StandardMorphism, p: PropValue, tgt: StandardMorphism, ctx: Ctx) -> PropValue:
    """Image under ``tgt`` of a ``src``-property, assuming ``src <= tgt``."""
    if isinstance(p, Unary):
        if tgt.is_unary(ctx.alphabet):
            return apply_to_unary(tgt, _unary_letter(src, ctx), p.interval)
        return prop_top(False)
    return apply_to_bound(tgt, p.eps, p.bound, ctx.alphabet)


def _derive(props: dict, m: StandardMorphism, ctx: Ctx) -> PropValue:
    """What the reduction derives for ``m`` from the other properties in ``props``."""
    trial = {k: v for k, v in props.items() if k != m}
    trial[m] = prop_top(m.is_unary(ctx.alphabet))
    red = _reduce_props(trial, ctx)
    if red is None:
        return Unary(UNARY_BOTTOM) if m.is_unary(ctx.alphabet) else NONUNARY_EMPTY
    return red[m]


@lru_cache(maxsize=1 << 16)
def component(o: StringObject, m: StandardMorphism, ctx: Ctx = DEFAULT_CTX) -> PropValue:
    """The ``m``-property of ``o``: stored if present, otherwise derived by reduction."""
    if o.is_bottom:
        return Unary(UNARY_BOTTOM) if m.is_unary(ctx.alphabet) else NONUNARY_EMPTY
    props = _stored(o)
    if m in props:
        return props[m]
    return _derive(props, m, ctx)


def _linear_order(ms: Iterable[StandardMorphism]) -> list[StandardMorphism]:
    return list(_linear_order_cached(frozenset(ms)))


@lru_cache(maxsize=1 << 12)
def _linear_order_cached(ms: frozenset) -> tuple:
    below = {m: sum(1 for s in ms if s != m and leq(s, m)) for m in ms}
    return tuple(sorted(ms, key=lambda m: (below[m], _key(m))))


def prune(o: StringObject, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    """Drop customs whose value the remaining properties already determine."""
    if o.is_bottom or not o.customs:
        return o
    props = _stored(o)
    for m in _linear_order(o.morphisms()):
        if props[m] == _derive(props, m, ctx):
            del props[m]
    return _rebuild(props, ctx, o.universe)


def _rebuild(props: dict, ctx: Ctx, universe: Iterable[StandardMorphism] = ()) -> StringObject:
    customs = {m: p for m, p in props.items() if not (m.is_identity or m.is_length)}
    return make_object(props[IDENTITY], props[LENGTH].interval, customs, ctx, universe)


# ---------------------------------------------------------------- reduction steps


def _image_letters(m: StandardMorphism, ctx: Ctx):
    if m.is_identity:
        return None if ctx.alphabet.is_open else frozenset(ctx.alphabet.letters)
    return m.image_letters(ctx.alphabet)


def _standalone_prop(m: StandardMorphism, p: PropValue, ctx: Ctx) -> PropValue:
    if not isinstance(p, NonUnary) or p.bound.is_bottom:
        return p
    letters = _image_letters(m, ctx)
    if letters is None or len(letters) != 2:
        return p
    return NonUnary(p.eps, _standalone_cached(p.bound, tuple(sorted(letters))))


@lru_cache(maxsize=1 << 16)
def _standalone_cached(b: LowerBound, letters: tuple) -> LowerBound:
    return standalone_reduce(b, letters)


def _standalone_step(props: dict, ctx: Ctx) -> None:
    for m, p in list(props.items()):
        if not isinstance(p, NonUnary) or p.bound.is_bottom:
            continue
        props[m] = _standalone_prop(m, p, ctx)


def _candidates(m: StandardMorphism, r: str, ctx: Ctx):
    """Letters that may sit at a position whose surviving image letter is ``r``."""
    cls = m.class_of(r, ctx.alphabet) or frozenset()
    kind, s = m.erase_key()
    if kind == "fin":
        return True, frozenset(cls | s)
    return False, frozenset(s - cls)  # complement of the kept letters outside cls


def _intersect(a, b):
    fa, sa = a
    fb, sb = b
    if fa and fb:
        return True, sa & sb
    if fa:
        return True, sa - sb
    if fb:
        return True, sb - sa
    return False, sa | sb


def _forced_word(entries: list, ctx: Ctx):
    """Longest word every non-empty member must start with; ``None`` if contradictory."""
    ptr = [0] * len(entries)
    out = []
    while True:
        cand = None
        for k, (m, w) in enumerate(entries):
            if ptr[k] < len(w):
                c = _candidates(m, w[ptr[k]], ctx)
                cand = c if cand is None else _intersect(cand, c)
        if cand is None:
            return "".join(out)
        if not ctx.alphabet.is_open:
            cand = _intersect(cand, (True, frozenset(ctx.alphabet.letters)))
        finite, letters = cand
        if finite and not letters:
            return None
        if not finite or len(letters) != 1:
            return "".join(out)
        (c,) = letters
        out.append(c)
        for k, (m, w) in enumerate(entries):
            if ptr[k] < len(w) and m.image(c):
                ptr[k] += 1


def _letter_step(props: dict, ctx: Ctx) -> None:
    pre, suf = [], []
    for m, p in props.items():
        if not isinstance(p, NonUnary) or p.bound.is_bottom:
            continue
        if p.eps and m.is_erasing(ctx.alphabet):
            continue
        if p.bound.prefix:
            pre.append((m, p.bound.prefix))
        if p.bound.suffix:
            suf.append((m, p.bound.suffix[::-1]))
    if all(m.is_identity for m, _ in pre + suf):
        return
    v = props[IDENTITY]
    fp = _forced_word(pre, ctx)
    fs = _forced_word(suf, ctx)
    if fp is None or fs is None:
        props[IDENTITY] = NonUnary(v.eps, BOTTOM_BOUND)
        return
    nb = bound_meet(v.bound, make_bound(prefix=fp or None, suffix=fs[::-1] or None))
    if nb != v.bound:
        props[IDENTITY] = NonUnary(v.eps, nb)


def _usable_source(m: StandardMorphism, p, ctx: Ctx) -> bool:
    """Every member has a non-empty image satisfying the bound."""
    return isinstance(p, NonUnary) and not p.bound.is_bottom and \
        (not p.eps or not m.is_erasing(ctx.alphabet))


def _add_factors(props: dict, t: StandardMorphism, words: list[str]) -> None:
    p = props[t]
    if not words or p.bound.is_bottom:
        return
    nb = bound_meet(p.bound, make_bound(factors=words))
    if nb != p.bound:
        props[t] = NonUnary(p.eps, nb)


def _all_factors(b: LowerBound) -> set[str]:
    out: set[str] = set()
    for m in b.factors:
        out |= factors_of(m)
    return out


def _transfer_step(props: dict, ctx: Ctx) -> None:
    ms = list(props)
    for s in ms:
        ps = props[s]
        if not _usable_source(s, ps, ctx):
            continue
        for t in ms:
            if t == s or not isinstance(props[t], NonUnary):
                continue
            new = [w for w in _all_factors(ps.bound) if transfers(w, s, t, ctx.alphabet)]
            _add_factors(props, t, new)


def _gap_split(w: str):
    """``(d, i, c, j)`` when ``w == d*i + c + d*j`` with ``i, j >= 1`` and ``c != d``."""
    if len(w) < 3 or w[0] != w[-1]:
        return None
    d = w[0]
    odd = [k for k, x in enumerate(w) if x != d]
    if len(odd) != 1:
        return None
    k = odd[0]
    return d, k, w[k], len(w) - k - 1


def _gap_step(props: dict, ctx: Ctx) -> None:
    ms = list(props)
    for s in ms:
        ps = props[s]
        if not s.is_erasing(ctx.alphabet) or not _usable_source(s, ps, ctx):
            continue
        kind, erased = s.erase_key()
        if kind != "fin":
            continue
        for t in ms:
            if t == s or not isinstance(props[t], NonUnary) or leq(s, t):
                continue
            new = []
            for w in _all_factors(ps.bound):
                split = _gap_split(w)
                if split is None:
                    continue
                d, i, c, j = split
                group = (s.class_of(d, ctx.alphabet) or frozenset()) | erased
                imgs = {t.image(x) for x in group}
                if len(imgs) != 1 or "" in imgs or not transfers(c, s, t, ctx.alphabet):
                    continue
                (dd,) = imgs
                new.append(dd * i + t.image(c) + dd * j)
            _add_factors(props, t, new)


def _upward_step(props: dict, ctx: Ctx) -> None:
    order = _linear_order(props)
    for n, t in enumerate(order):
        for s in order[:n]:
            if leq(s, t):
                props[t] = prop_meet(props[t], image(s, props[s], t, ctx))


def bound_min_len(b: LowerBound) -> float:
    """Least length of a non-empty word satisfying ``b`` (``INF`` if none)."""
    if b.is_bottom:
        return INF
    if b.constant is not None:
        return len(b.constant)
    n = max([len(f) for f in b.factors] + [1])
    if b.prefix and b.suffix:
        n = max(n, len(b.prefix) + len(b.suffix) - longest_overlap(b.prefix, b.suffix))
    return max(n, len(letters_of(b.words())))


def _same_erase(a: StandardMorphism, b: StandardMorphism, ctx: Ctx) -> bool:
    return a.erase_subset(b, ctx.alphabet) and b.erase_subset(a, ctx.alphabet)


def _unary_step(props: dict, ctx: Ctx) -> None:
    for th in list(props):
        cur = props[th]
        if not isinstance(cur, Unary) or cur.interval.is_bottom:
            continue
        iv = cur.interval
        eps, lo, hi = iv.eps, iv.lo, iv.hi
        for sg, p in props.items():
            if sg == th:
                continue
            if th.erase_subset(sg, ctx.alphabet):
                # every letter kept by sg is kept by th: |th(w)| >= |sg(w)|
                same = _same_erase(th, sg, ctx)
                if isinstance(p, NonUnary):
                    need = bound_min_len(p.bound)
                else:
                    need = p.interval.lo if p.interval.lo is not None else INF
                if not p.eps:
                    eps = False
                if not p.eps or same:
                    if need == INF:
                        lo = None
                    elif lo is not None:
                        lo = max(lo, need)
            if sg.erase_subset(th, ctx.alphabet):
                # |th(w)| <= |sg(w)|
                if isinstance(p, NonUnary):
                    if p.bound.is_bottom:
                        lo = None
                    elif p.bound.constant is not None:
                        hi = min(hi, len(p.bound.constant) + 1)
                else:
                    if not p.interval.has_interval:
                        lo = None
                    else:
                        hi = min(hi, p.interval.hi)
        iv = unary(eps, lo, hi)
        props[th] = Unary(iv)
        # the other direction: |sg(w)| <= |th(w)| caps the non-empty images of sg
        for sg, p in props.items():
            if sg == th or not isinstance(p, NonUnary) or p.bound.is_bottom:
                continue
            if th.erase_subset(sg, ctx.alphabet):
                if not iv.has_interval or bound_min_len(p.bound) >= iv.hi:
                    props[sg] = NonUnary(p.eps, BOTTOM_BOUND)


def _perfect_step(props: dict, ctx: Ctx) -> None:
    v = props[IDENTITY]
    ln = props[LENGTH].interval
    b = v.bound
    if b.is_bottom or b.constant is not None or not ln.has_interval or ln.hi == INF:
        return
    spare = ctx.alphabet.spare(letters_of(b.words()))
    if ln.lo >= cross_reduction_threshold(b) and spare >= 2:
        return
    nb, niv = perfect_reduce_budgeted(v.eps, b, ln, ctx.budget, ctx.alphabet)
    if nb != b:
        props[IDENTITY] = NonUnary(v.eps, nb)
    props[LENGTH] = Unary(unary_meet(ln, niv))


def _eps_step(props: dict, ctx: Ctx) -> None:
    e = all(p.eps for p in props.values())
    for m, p in list(props.items()):
        if m.is_identity or m.is_length or not m.is_erasing(ctx.alphabet):
            if isinstance(p, Unary):
                iv = p.interval
                props[m] = Unary(unary(e and iv.eps, iv.lo, iv.hi))
            else:
                props[m] = NonUnary(e and p.eps, p.bound)


def _reduce_props(props: dict, ctx: Ctx) -> Optional[dict]:
    key = tuple(sorted(props.items(), key=lambda kv: _key(kv[0])))
    out = _reduce_cached(key, ctx)
    return None if out is None else dict(out)


@lru_cache(maxsize=1 << 16)
def _reduce_cached(key: tuple, ctx: Ctx) -> Optional[tuple]:
    out = _reduce_fixpoint(dict(key), ctx)
    return None if out is None else tuple(out.items())


def _reduce_fixpoint(props: dict, ctx: Ctx) -> Optional[dict]:
    steps = (_standalone_step, _letter_step, _transfer_step, _upward_step, _gap_step,
             _unary_step, _perfect_step, _eps_step)
    for _ in range(MAX_PASSES):
        before = dict(props)
        for step in steps:
            step(props, ctx)
            if any(p.is_empty for p in props.values()):
                return None
        if props == before:
            return props
    raise RuntimeError("object reduction did not stabilise")


@lru_cache(maxsize=1 << 16)
def reduce_object(o: StringObject, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    """Cross-reduce all properties of ``o`` and prune redundant customs."""
    if o.is_bottom:
        return BOTTOM_OBJECT
    props = _stored(o)
    for m in o.universe:
        if m not in props:
            props[m] = prop_top(m.is_unary(ctx.alphabet))
    props = _reduce_props(props, ctx)
    if props is None:
        return BOTTOM_OBJECT
    return prune(_rebuild(props, ctx, o.universe), ctx)


# individual steps, exposed for tests and the CLI

def _single(step):
    def run(o: StringObject, ctx: Ctx = DEFAULT_CTX) -> StringObject:
        if o.is_bottom:
            return o
        props = _stored(o)
        step(props, ctx)
        if any(p.is_empty for p in props.values()):
            return BOTTOM_OBJECT
        return _rebuild(props, ctx, o.universe)
    run.__name__ = step.__name__.strip("_")
    return run


resolve_letter_constraints = _single(_letter_step)
propagate_preserved = _single(_transfer_step)
propagate_upwards = _single(_upward_step)
propagate_gap_subwords = _single(_gap_step)
unary_bounds_reduce = _single(_unary_step)
standalone_step = _single(_standalone_step)


def light_reduce(o: StringObject, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    """Standalone and unary-bound steps only, then pruning; used after natural operations."""
    if o.is_bottom:
        return o
    props = _stored(o)
    _standalone_step(props, ctx)
    _unary_step(props, ctx)
    _eps_step(props, ctx)
    if any(p.is_empty for p in props.values()):
        return BOTTOM_OBJECT
    return prune(_rebuild(props, ctx, o.universe), ctx)


# ---------------------------------------------------------------- lattice operations


def combined_morphisms(o1: StringObject, o2: StringObject, ctx: Ctx = DEFAULT_CTX) -> list:
    m1 = [IDENTITY] + sorted(o1.universe, key=_key)
    m2 = [IDENTITY] + sorted(o2.universe, key=_key)
    out = set()
    for s in m1:
        for t in m2:
            eta = morph_join(s, t, ctx.alphabet)
            if eta.is_identity or eta.is_length or eta.is_trivial(ctx.alphabet):
                continue
            out.add(eta)
    return sorted(out, key=_key)


def _componentwise(o1: StringObject, o2: StringObject, op, ctx: Ctx) -> StringObject:
    props = {
        IDENTITY: op(o1.value, o2.value),
        LENGTH: op(Unary(o1.length), Unary(o2.length)),
    }
    etas = combined_morphisms(o1, o2, ctx)
    for eta in etas:
        props[eta] = op(component(o1, eta, ctx), component(o2, eta, ctx))
    return _rebuild(props, ctx, etas)


def raw_join(o1: StringObject, o2: StringObject, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    if o1.is_bottom:
        return o2
    if o2.is_bottom:
        return o1
    return _componentwise(o1, o2, prop_join, ctx)


def raw_meet(o1: StringObject, o2: StringObject, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    if o1.is_bottom or o2.is_bottom:
        return BOTTOM_OBJECT
    return _componentwise(o1, o2, prop_meet, ctx)


def object_join(o1: StringObject, o2: StringObject, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    """Componentwise join over the combined morphisms, then pruning (no reduction)."""
    return prune(raw_join(o1, o2, ctx), ctx)


def object_meet(o1: StringObject, o2: StringObject, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    return reduce_object(raw_meet(o1, o2, ctx), ctx)


def object_leq(o1: StringObject, o2: StringObject, ctx: Ctx = DEFAULT_CTX) -> bool:
    """Componentwise order over the combined morphisms."""
    if o1.is_bottom:
        return True
    if o2.is_bottom:
        return False
    return object_meet(o1, o2, ctx) == reduce_object(o1, ctx)


def widen_object(prev: StringObject, nxt: StringObject, delay_exhausted: bool,
                 ctx: Ctx = DEFAULT_CTX) -> StringObject:
    """Join, and once the delay is used up push growing upper length bounds to infinity."""
    j = object_join(prev, nxt, ctx)
    if not delay_exhausted or j.is_bottom or prev.is_bottom:
        return j

    def widen(old: UnaryInterval, new: UnaryInterval) -> UnaryInterval:
        if new.has_interval and old.has_interval and new.hi > old.hi:
            return unary(new.eps, new.lo, INF)
        if new.has_interval and not old.has_interval:
            return unary(new.eps, new.lo, INF)
        return new

    props = _stored(j)
    props[LENGTH] = Unary(widen(prev.length, j.length))
    for m, p in list(props.items()):
        if isinstance(p, Unary) and not m.is_length:
            props[m] = Unary(widen(component(prev, m, ctx).interval, p.interval))
    return _rebuild(props, ctx, j.universe)


def with_value(o: StringObject, bound: LowerBound, ctx: Ctx = DEFAULT_CTX) -> StringObject:
    """Meet the value of ``o`` with an extra lower bound and reduce."""
    if o.is_bottom:
        return o
    return reduce_object(replace(o, value=NonUnary(o.value.eps, bound_meet(o.value.bound, bound))), ctx)
