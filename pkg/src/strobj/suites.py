"""Named randomized check suites: lattice laws, transformer soundness and the
abstraction/concretization round trips.  Shared by ``strobj check`` and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from .context import Ctx
from .morphism import StandardMorphism, all_standard_morphisms
from .objects import (
    StringObject,
    close_universe,
    constant_object,
    object_join,
    object_leq,
    object_meet,
    reduce_object,
)
from .ops import (
    RELATIONS,
    abs_char_at,
    abs_concat,
    abs_index_of,
    abs_replace,
    abs_substring,
    assume_falsy,
    assume_index_cmp,
    assume_truthy,
    c_char_at,
    c_concat,
    c_index_of,
    c_replace,
    c_substring,
    holds,
    int_abstract,
    int_exact,
)
from .oracle import (
    Outcome,
    all_words,
    alpha_of_set,
    check_soundness,
    enumerate_gamma,
    random_object,
    random_word,
    run_trials,
)
from .props import INF
from .words import Alphabet


@dataclass(frozen=True)
class SuiteConfig:
    letters: str = "ab"
    max_len: int = 6  # concretization depth for soundness checks
    max_hi: int = 6  # largest finite length bound in random objects
    morphisms_per_case: int = 2
    budget: int = 20_000

    @property
    def ctx(self) -> Ctx:
        return Ctx(alphabet=Alphabet(self.letters), budget=self.budget)

    def morphism_pool(self) -> list[StandardMorphism]:
        alpha = self.ctx.alphabet
        return [m for m in all_standard_morphisms(self.letters) if not m.is_identity and not m.is_trivial(alpha)]


def _props(rng: random.Random, cfg: SuiteConfig) -> list[StandardMorphism]:
    pool = cfg.morphism_pool()
    return rng.sample(pool, min(cfg.morphisms_per_case, len(pool)))


def _obj(rng: random.Random, cfg: SuiteConfig, ms) -> StringObject:
    if rng.random() < 0.15:
        return reduce_object(constant_object(random_word(rng, cfg.letters, 0, 3), close_universe(ms, cfg.ctx)), cfg.ctx)
    return random_object(rng, cfg.letters, ms, cfg.ctx, max_hi=cfg.max_hi)


def _index(rng: random.Random):
    if rng.random() < 0.5:
        return int_exact(rng.randint(0, 4))
    lo = rng.randint(0, 3)
    return int_abstract(False, lo, rng.choice([INF, lo + rng.randint(1, 3)]))


# ---------------------------------------------------------------- lattice laws


def lattice_laws(trials: int, seed: int = 0, cfg: SuiteConfig = SuiteConfig(letters="abc"),
                 meet: Optional[Callable] = None) -> Outcome:
    """Commutativity, associativity, absorption and join-preserves-reducedness on
    reduced triples sharing one property set.  ``meet`` may be swapped for a mutant."""
    ctx = cfg.ctx
    j = lambda a, b: object_join(a, b, ctx)
    m = meet or (lambda a, b: object_meet(a, b, ctx))

    def gen(rng):
        ms = _props(rng, cfg)
        return tuple(random_object(rng, cfg.letters, ms, ctx, max_hi=cfg.max_hi) for _ in range(3))

    def prop(t) -> bool:
        x, y, z = t
        return (j(x, y) == j(y, x) and m(x, y) == m(y, x)
                and j(j(x, y), z) == j(x, j(y, z)) and m(m(x, y), z) == m(x, m(y, z))
                and j(x, m(x, y)) == x and m(x, j(x, y)) == x
                and reduce_object(j(x, y), ctx) == j(reduce_object(x, ctx), reduce_object(y, ctx)))

    return run_trials(prop, gen, trials, seed)


def broken_meet(a: StringObject, b: StringObject) -> StringObject:
    """A deliberately wrong meet that ignores its second argument, for harness self-tests."""
    return a


# ---------------------------------------------------------------- soundness


def _sound(concrete, abstract, gen, trials, seed, cfg, contains=None) -> Outcome:
    return check_soundness(concrete, abstract, gen, cfg.letters, cfg.max_len, trials, seed, contains)


def soundness_concat(trials: int, seed: int = 0, cfg: SuiteConfig = SuiteConfig()) -> Outcome:
    def gen(rng):
        ms = _props(rng, cfg)
        return _obj(rng, cfg, ms), _obj(rng, cfg, ms)
    # pairs whose concatenation exceeds the depth are still checked: membership is exact
    return _sound(c_concat, lambda a, b: abs_concat(a, b, cfg.ctx), gen, trials, seed, cfg)


def soundness_substring(trials: int, seed: int = 0, cfg: SuiteConfig = SuiteConfig()) -> Outcome:
    def gen(rng):
        return _obj(rng, cfg, _props(rng, cfg)), _index(rng)

    def contains(res, results):
        return all(res.contains(r) for r in results)

    return _sound(lambda w, n: [c_substring(w, k) for k in range(cfg.max_len + 1) if n.contains(k)],
                  lambda o, n: abs_substring(o, n, cfg.ctx), gen, trials, seed, cfg, contains)


def soundness_char_at(trials: int, seed: int = 0, cfg: SuiteConfig = SuiteConfig()) -> Outcome:
    def gen(rng):
        return _obj(rng, cfg, _props(rng, cfg)), _index(rng)

    def contains(res, results):
        return all(res.contains(r) for r in results)

    return _sound(lambda w, n: [c_char_at(w, k) for k in range(cfg.max_len + 1) if n.contains(k)],
                  lambda o, n: abs_char_at(o, n, cfg.ctx), gen, trials, seed, cfg, contains)


def soundness_index_of(trials: int, seed: int = 0, cfg: SuiteConfig = SuiteConfig()) -> Outcome:
    def gen(rng):
        ms = _props(rng, cfg)
        return _obj(rng, cfg, ms), _obj(rng, cfg, ms)
    return _sound(c_index_of, lambda a, b: abs_index_of(a, b, cfg.ctx), gen, trials, seed, cfg)


def soundness_replace(trials: int, seed: int = 0, cfg: SuiteConfig = SuiteConfig()) -> Outcome:
    def gen(rng):
        ms = _props(rng, cfg)
        uni = close_universe(ms, cfg.ctx)
        o2 = (constant_object(random_word(rng, cfg.letters, 0, 2), uni) if rng.random() < 0.8
              else _obj(rng, cfg, ms))
        return _obj(rng, cfg, ms), o2, constant_object(random_word(rng, cfg.letters, 0, 2), uni)
    return _sound(c_replace, lambda a, b, c: abs_replace(a, b, c, cfg.ctx), gen, trials, seed, cfg)


def soundness_truthy(trials: int, seed: int = 0, cfg: SuiteConfig = SuiteConfig()) -> Outcome:
    """Every non-empty member survives the truthy refinement."""
    gen = lambda rng: (_obj(rng, cfg, _props(rng, cfg)),)
    return _sound(lambda w: w, lambda o: assume_truthy(o, cfg.ctx), gen, trials, seed, cfg,
                  lambda res, w: w == "" or res.contains(w))


def soundness_falsy(trials: int, seed: int = 0, cfg: SuiteConfig = SuiteConfig()) -> Outcome:
    gen = lambda rng: (_obj(rng, cfg, _props(rng, cfg)),)
    return _sound(lambda w: w, lambda o: assume_falsy(o, cfg.ctx), gen, trials, seed, cfg,
                  lambda res, w: w != "" or res.contains(w))


def soundness_index_cmp(trials: int, seed: int = 0, cfg: SuiteConfig = SuiteConfig()) -> Outcome:
    """Pairs satisfying ``indexOf rel k`` survive in both refined arguments."""
    def gen(rng):
        ms = _props(rng, cfg)
        return _obj(rng, cfg, ms), _obj(rng, cfg, ms), rng.choice(RELATIONS), rng.randint(-1, 3)

    def contains(res, pair):
        (r1, r2), (u, v, ok) = res, pair
        return not ok or (r1.contains(u) and r2.contains(v))

    return _sound(lambda u, v, rel, k: (u, v, holds(c_index_of(u, v), rel, k)),
                  lambda a, b, rel, k: assume_index_cmp(a, b, rel, k, cfg.ctx),
                  gen, trials, seed, cfg, contains)


SOUNDNESS_SUITES = {
    "concat": soundness_concat,
    "substring": soundness_substring,
    "charAt": soundness_char_at,
    "indexOf": soundness_index_of,
    "replace": soundness_replace,
    "assume_truthy": soundness_truthy,
    "assume_falsy": soundness_falsy,
    "assume_index_cmp": soundness_index_cmp,
}


# ---------------------------------------------------------------- abstraction round trips


def galois_sets(trials: int, seed: int = 0, cfg: SuiteConfig = SuiteConfig(letters="abc")) -> Outcome:
    """Every member of a random finite set lies in the concretization of its abstraction."""
    ctx = cfg.ctx

    def gen(rng):
        ms = _props(rng, cfg)
        s = {random_word(rng, cfg.letters, 0, cfg.max_len) for _ in range(rng.randint(1, 4))}
        return frozenset(s), tuple(ms)

    def prop(case) -> bool:
        s, ms = case
        a = alpha_of_set(s, ms, ctx)
        return all(a.contains(w) for w in s)

    return run_trials(prop, gen, trials, seed)


def galois_objects(trials: int, seed: int = 0, cfg: SuiteConfig = SuiteConfig(letters="ab")) -> Outcome:
    """The abstraction of a bounded concretization is below the object it came from."""
    ctx = cfg.ctx

    def gen(rng):
        ms = _props(rng, cfg)
        return random_object(rng, cfg.letters, ms, ctx, max_hi=cfg.max_hi), tuple(ms)

    def prop(case) -> bool:
        o, ms = case
        g = enumerate_gamma(o, cfg.letters, cfg.max_len).words
        return object_leq(alpha_of_set(g, ms, ctx), o, ctx)

    return run_trials(prop, gen, trials, seed)


def atoms_exhaustive(letters: str = "ab", max_len: int = 8) -> Outcome:
    """The abstraction of each singleton concretizes back to exactly that word."""
    words = list(all_words(letters, max_len))
    for i, w in enumerate(words):
        a = alpha_of_set({w})
        if [u for u in words if a.contains(u)] != [w]:
            return Outcome(False, i + 1, w)
    return Outcome(True, len(words))


def atoms_random(trials: int, seed: int = 0, letters: str = "abc", max_len: int = 5) -> Outcome:
    def prop(w) -> bool:
        return enumerate_gamma(alpha_of_set({w}), letters, max_len).words == {w}
    return run_trials(prop, lambda rng: random_word(rng, letters, 0, max_len - 1), trials, seed)
