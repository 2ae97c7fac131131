"""Brute-force ground truth: bounded concretization, best abstraction of finite
sets, unavoidability search and a small randomized checking harness."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .context import DEFAULT_CTX, Ctx
from .morphism import StandardMorphism, all_standard_morphisms
from .objects import (
    BOTTOM_OBJECT,
    StringObject,
    close_universe,
    make_object,
    prune,
    reduce_object,
)
from .oracle_search import MAX_LEN_GUARD, Verdict, brute_unavoidable, four_form_candidates
from .props import (
    BOTTOM_BOUND,
    LowerBound,
    NonUnary,
    Unary,
    UnaryInterval,
    make_bound,
    unary,
)
from .words import Alphabet, antichain, common_prefix, common_suffix, factors_of

__all__ = [
    "BoundedLanguage", "enumerate_gamma", "alpha_bound", "alpha_unary", "alpha_of_set",
    "brute_unavoidable", "Verdict", "four_form_candidates", "Outcome", "run_trials",
    "check_soundness", "check_lattice_laws", "random_bound", "random_object", "random_word",
    "shrink_object",
]


@dataclass(frozen=True)
class BoundedLanguage:
    words: frozenset
    max_len: int

    def __contains__(self, w: str) -> bool:
        return w in self.words

    def __len__(self) -> int:
        return len(self.words)


def _letters(alphabet) -> list[str]:
    if isinstance(alphabet, Alphabet):
        if alphabet.is_open:
            raise ValueError("bounded enumeration needs a finite alphabet")
        return list(alphabet.letters)
    return sorted(set(alphabet))


def _member(x, w: str) -> bool:
    if isinstance(x, StringObject):
        return x.contains(w)
    if isinstance(x, LowerBound):
        return x.satisfied_by(w)
    if isinstance(x, UnaryInterval):
        return x.contains(len(w))
    return x.contains(w)


def all_words(letters: Sequence[str], max_len: int) -> Iterable[str]:
    for n in range(max_len + 1):
        for t in itertools.product(letters, repeat=n):
            yield "".join(t)


def enumerate_gamma(x, alphabet, max_len: int) -> BoundedLanguage:
    """Every word of length ``<= max_len`` over ``alphabet`` in the concretization of ``x``."""
    if max_len > MAX_LEN_GUARD:
        raise ValueError(f"max_len {max_len} exceeds the guard of {MAX_LEN_GUARD}")
    letters = _letters(alphabet)
    return BoundedLanguage(frozenset(w for w in all_words(letters, max_len) if _member(x, w)), max_len)


# ---------------------------------------------------------------- abstraction


def alpha_bound(words: Iterable[str]) -> LowerBound:
    """Most precise lower bound of a finite set of non-empty words."""
    ws = sorted({w for w in words if w})
    if not ws:
        return BOTTOM_BOUND
    if len(ws) == 1:
        return make_bound(constant=ws[0])
    pre, suf = ws[0], ws[0]
    common = factors_of(ws[0])
    for w in ws[1:]:
        pre = common_prefix(pre, w)
        suf = common_suffix(suf, w)
        common &= factors_of(w)
    return make_bound(prefix=pre or None, suffix=suf or None, factors=antichain(common))


def alpha_unary(lengths: Iterable[int]) -> UnaryInterval:
    ls = set(lengths)
    pos = [n for n in ls if n > 0]
    if not pos:
        return unary(0 in ls)
    return unary(0 in ls, min(pos), max(pos) + 1)


def alpha_of_set(s: Iterable[str], morphisms: Iterable[StandardMorphism] = (),
                 ctx: Ctx = DEFAULT_CTX) -> StringObject:
    s = set(s)
    if not s:
        return BOTTOM_OBJECT
    value = NonUnary("" in s, alpha_bound(s))
    length = alpha_unary(len(w) for w in s)
    customs = {}
    for m in morphisms:
        imgs = {m.apply(w) for w in s}
        if m.is_unary(ctx.alphabet):
            customs[m] = Unary(alpha_unary(len(w) for w in imgs))
        else:
            customs[m] = NonUnary("" in imgs, alpha_bound(imgs))
    o = make_object(value, length, customs, ctx, close_universe(morphisms, ctx))
    return reduce_object(prune(o, ctx), ctx)


# ---------------------------------------------------------------- random generators


def random_word(rng: random.Random, letters: Sequence[str], lo: int, hi: int) -> str:
    return "".join(rng.choice(letters) for _ in range(rng.randint(lo, hi)))


def random_bound(rng: random.Random, letters: Sequence[str], max_members: int = 3,
                 max_len: int = 3, p_prefix: float = 0.3, p_suffix: float = 0.3,
                 p_const: float = 0.05) -> LowerBound:
    if rng.random() < p_const:
        return make_bound(constant=random_word(rng, letters, 1, max_len + 1))
    members = [random_word(rng, letters, 1, max_len) for _ in range(rng.randint(0, max_members))]
    pre = random_word(rng, letters, 1, max_len) if rng.random() < p_prefix else None
    suf = random_word(rng, letters, 1, max_len) if rng.random() < p_suffix else None
    return make_bound(prefix=pre, suffix=suf, factors=members)


def random_interval(rng: random.Random, max_hi: int = 9, p_eps: float = 0.3) -> UnaryInterval:
    lo = rng.randint(1, max_hi - 1)
    hi = rng.choice([float("inf"), rng.randint(lo + 1, max_hi)])
    return unary(rng.random() < p_eps, lo, hi)


def random_object(rng: random.Random, letters: Sequence[str], morphisms: Sequence[StandardMorphism] = (),
                  ctx: Ctx = DEFAULT_CTX, max_members: int = 2, max_len: int = 3,
                  max_hi: int = 9, p_custom: float = 0.5, reduce: bool = True) -> StringObject:
    """A random object over ``letters``; customs drawn from ``morphisms``."""
    value = NonUnary(rng.random() < 0.3, random_bound(rng, letters, max_members, max_len))
    length = random_interval(rng, max_hi)
    customs = {}
    for m in morphisms:
        if rng.random() >= p_custom:
            continue
        img = sorted({m.apply(c) for c in letters} - {""})
        if not img:
            continue
        if m.is_unary(ctx.alphabet):
            customs[m] = Unary(random_interval(rng, max_hi))
        else:
            customs[m] = NonUnary(rng.random() < 0.3, random_bound(rng, img, max_members, max_len))
    o = make_object(value, length, customs, ctx, close_universe(morphisms, ctx))
    return reduce_object(o, ctx) if reduce else o


# ---------------------------------------------------------------- harness


@dataclass
class Outcome:
    passed: bool
    trials: int
    counterexample: object = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


def _shrink_word(w: str) -> list[str]:
    return [w[:i] + w[i + 1:] for i in range(len(w))]


def shrink_object(o: StringObject, ctx: Ctx = DEFAULT_CTX) -> list[StringObject]:
    """Smaller variants: shorter words first, then fewer factors."""
    if o.is_bottom:
        return []
    out = []
    b = o.value.bound
    if not b.is_bottom and b.constant is None:
        for f in sorted(b.factors):
            for g in _shrink_word(f):
                out.append(make_object(NonUnary(o.value.eps, make_bound(
                    prefix=b.prefix, suffix=b.suffix, factors=(b.factors - {f}) | ({g} if g else set()))),
                    o.length, o.custom_map(), ctx, o.universe))
        for f in sorted(b.factors):
            if f not in (b.prefix, b.suffix):
                out.append(make_object(NonUnary(o.value.eps, make_bound(
                    prefix=b.prefix, suffix=b.suffix, factors=b.factors - {f})), o.length, o.custom_map(), ctx, o.universe))
    for m in o.morphisms():
        cm = o.custom_map()
        del cm[m]
        out.append(make_object(o.value, o.length, cm, ctx, o.universe))
    return out


def run_trials(prop: Callable[[object], bool], gen: Callable[[random.Random], object],
               trials: int, seed: int = 0, shrink: Optional[Callable[[object], list]] = None) -> Outcome:
    """Evaluate ``prop`` on ``trials`` generated cases; shrink the first failure greedily."""
    rng = random.Random(seed)
    for i in range(trials):
        case = gen(rng)
        if prop(case):
            continue
        if shrink is not None:
            improved = True
            while improved:
                improved = False
                for smaller in shrink(case):
                    try:
                        bad = not prop(smaller)
                    except Exception:  # a shrunk case may be ill-formed; skip it
                        continue
                    if bad:
                        case, improved = smaller, True
                        break
        return Outcome(False, i + 1, case)
    return Outcome(True, trials)


def check_soundness(concrete: Callable, abstract: Callable, gen: Callable[[random.Random], tuple],
                    alphabet, max_len: int, trials: int, seed: int = 0,
                    result_contains: Optional[Callable] = None) -> Outcome:
    """Check ``{concrete(w...) : w in gamma(args)} <= gamma(abstract(args))``.

    ``gen`` returns a tuple of abstract arguments (objects, or other values which
    are passed through unchanged to both sides).
    """
    letters = _letters(alphabet)
    contains = result_contains or (lambda r, v: r.contains(v))

    def prop(args) -> bool:
        res = abstract(*args)
        pools = []
        for a in args:
            if isinstance(a, StringObject):
                pools.append(sorted(enumerate_gamma(a, letters, max_len).words))
            else:
                pools.append([a])
        return all(contains(res, concrete(*combo)) for combo in itertools.product(*pools))

    return run_trials(prop, gen, trials, seed)


def check_lattice_laws(join: Callable, meet: Callable, gen: Callable[[random.Random], object],
                       trials: int, seed: int = 0, eq: Callable = lambda a, b: a == b) -> Outcome:
    """Commutativity, associativity and absorption on generated triples."""

    def prop(t) -> bool:
        x, y, z = t
        return (eq(join(x, y), join(y, x)) and eq(meet(x, y), meet(y, x))
                and eq(join(join(x, y), z), join(x, join(y, z)))
                and eq(meet(meet(x, y), z), meet(x, meet(y, z)))
                and eq(join(x, meet(x, y)), x) and eq(meet(x, join(x, y)), x))

    return run_trials(prop, lambda rng: (gen(rng), gen(rng), gen(rng)), trials, seed)


def standard_morphisms(letters: str) -> list[StandardMorphism]:
    return all_standard_morphisms(letters)
