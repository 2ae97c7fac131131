"""Exact value/length reduction by enumeration, and the length threshold above
which it can be skipped."""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .props import (
    BOTTOM_BOUND,
    LowerBound,
    UnaryInterval,
    make_bound,
    unary,
)
from .words import Alphabet, OPEN, antichain, common_prefix, common_suffix, factors_of, letters_of

DEFAULT_BUDGET = 10 ** 6


def internal_factors(b: LowerBound) -> list[str]:
    """Factor-code members that are not already factors of the prefix or suffix."""
    ends = [w for w in (b.prefix, b.suffix) if w]
    return sorted(f for f in b.factors if not any(f in e for e in ends))


def cross_reduction_threshold(b: LowerBound) -> int:
    """Least length from which value and length are already mutually reduced.

    The sum of the piece lengths plus one separator between consecutive
    pieces.  A bound made of a single piece needs one extra letter: at exactly
    the piece length the only word is the piece itself, which is a constant.
    """
    if b.is_bottom or b.constant is not None:
        return 0
    inner = internal_factors(b)
    pieces = len(inner) + (1 if b.prefix else 0) + (1 if b.suffix else 0)
    if pieces == 0:
        return 0
    total = sum(len(f) for f in inner) + len(b.prefix or "") + len(b.suffix or "") + pieces - 1
    if pieces == 1:
        total += 1
    return total


def _letters_for(b: LowerBound, alphabet: Alphabet) -> tuple[list[str], bool]:
    """Letters to enumerate over, and whether the extra letter stands for many."""
    used = sorted(letters_of(b.words()))
    spare = alphabet.spare(used)
    if spare == 0:
        return used, False
    return used + alphabet.fresh(used, 1), spare >= 2


def candidate_count(nletters: int, lo: int, hi: int) -> int:
    return sum(nletters ** n for n in range(lo, hi))


def solutions(b: LowerBound, letters: list[str], lo: int, hi: int, limit: Optional[int] = None):
    """Words over ``letters`` with length in ``[lo, hi)`` satisfying ``b``."""
    prefix = b.prefix or ""
    out = []

    def dfs(w: str):
        if len(w) < len(prefix):
            dfs(w + prefix[len(w)])
            return
        if len(w) >= lo and b.satisfied_by(w):
            out.append(w)
            if limit is not None and len(out) >= limit:
                raise StopIteration
        if len(w) + 1 < hi:
            for c in letters:
                dfs(w + c)

    if lo < hi:
        try:
            dfs("")
        except StopIteration:
            pass
    return out


@lru_cache(maxsize=1 << 14)
def perfect_reduce_budgeted(eps: bool, b: LowerBound, length: UnaryInterval,
                            budget: int = DEFAULT_BUDGET,
                            alphabet: Alphabet = OPEN) -> tuple[LowerBound, UnaryInterval]:
    """Enumerate the non-empty words of the value and recompute both bounds exactly.

    Returns the inputs unchanged when the length is unbounded or the candidate
    count exceeds ``budget``.  ``eps`` only decides the ε part of the length.
    """
    if b.is_bottom or b.constant is not None or length.is_bottom or not length.has_interval:
        return b, length
    if length.hi == float("inf"):
        return b, length
    letters, stand_in = _letters_for(b, alphabet)
    if not letters:
        return b, length
    lo, hi = length.lo, int(length.hi)
    if candidate_count(len(letters), lo, hi) > budget:
        return b, length
    sols = solutions(b, letters, lo, hi)
    if not sols:
        return BOTTOM_BOUND, unary(length.eps and eps)
    fresh = letters[-1] if stand_in else None

    def cut(w: str) -> str:
        if fresh is None or fresh not in w:
            return w
        return w[: w.index(fresh)]

    if len(sols) == 1 and (fresh is None or fresh not in sols[0]):
        nb = make_bound(constant=sols[0])
    else:
        pre, suf = sols[0], sols[0]
        common = factors_of(sols[0])
        for w in sols[1:]:
            pre = common_prefix(pre, w)
            suf = common_suffix(suf, w)
            common &= factors_of(w)
        pre = cut(pre)
        suf = cut(suf[::-1])[::-1]
        if fresh is not None:
            common = {f for f in common if fresh not in f}
        nb = make_bound(prefix=pre or None, suffix=suf or None, factors=antichain(common))
    lens = [len(w) for w in sols]
    return nb, unary(length.eps, min(lens), max(lens) + 1)
