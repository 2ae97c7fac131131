"""Standalone reduction of a lower bound over a binary alphabet.

Over three or more letters a basically reduced bound has no unavoidable word
outside its own constraint words, so the reduction is the identity.  Over
``{a, b}`` the only candidates are ``a^k b``, ``b^k a``, ``b a^k`` and
``a b^k``.  Each family is handled by one routine, ``_max_unavoidable_run``,
which looks for words of the shape ``x^k y``; the other families come from
swapping the letters and from reversing every word.

For ``x^k y`` the decision goes through the words that avoid it, i.e. words
in which every x-run followed by a ``y`` is shorter than ``k``.  A constraint
word whose trailing x-run is ``>= k`` must have its last ``y`` at the last
``y`` of the whole string, so all such words must agree on the part up to that
``y`` (one is a suffix of the other).  This is the sorted scan over trailing
runs: walk the words by decreasing run length and stop at the first one whose
head is not suffix-comparable with the longest head seen so far.  Prefix and
suffix equations pin the ends of the string and add the remaining cases.
"""

from __future__ import annotations

from typing import Iterable, Optional, Union

from .props import LowerBound, basic_reduce
from .words import Alphabet, antichain_insert, letters_of


def _trailing_run(w: str, x: str) -> int:
    n = 0
    for c in reversed(w):
        if c != x:
            break
        n += 1
    return n


def _heads_form_chain(heads: list[str]) -> bool:
    """True iff every pair of heads is suffix-comparable."""
    if not heads:
        return True
    longest = max(heads, key=len)
    return all(longest.endswith(h) for h in heads)


def _avoidable(k: int, prefix: Optional[str], suffix: Optional[str],
               members: list[str], x: str, y: str) -> bool:
    """Is there a string satisfying the pieces with no factor ``x^k y``?"""
    cand = x * k + y
    pieces = members + [w for w in (prefix, suffix) if w]
    if any(cand in w for w in pieces):
        return False

    if prefix and _trailing_run(prefix, x) >= k:
        # the prefix holds the last y: everything else must fit into prefix.x^r
        reach = max([len(w) for w in pieces] + [0]) + 1
        for r in range(reach + 1):
            w = prefix + x * r
            if suffix and not w.endswith(suffix):
                continue
            if all(m in w for m in members):
                return True
        return False

    heads, runs, pure = [], [], []
    for m in members:
        t = _trailing_run(m, x)
        if y in m:
            if t >= k:
                heads.append(m[: len(m) - t])
                runs.append(t)
        elif len(m) >= k:
            pure.append(len(m))
    final_run = None
    if suffix and y in suffix:
        t = _trailing_run(suffix, x)
        heads.append(suffix[: len(suffix) - t])
        final_run = t
    if not _heads_form_chain(heads):
        return False
    if final_run is not None and any(r > final_run for r in runs + pure):
        return False
    return True


def _max_unavoidable_run(prefix, suffix, members, x, y) -> int:
    """Largest ``k`` with ``x^k y`` unavoidable (0 if none)."""
    words = members + [w for w in (prefix, suffix) if w]
    top = max([len(w) for w in words] + [0]) + 1
    for k in range(top, 0, -1):
        if not _avoidable(k, prefix, suffix, members, x, y):
            return k
    return 0


def unavoidable_candidates(b: LowerBound, x: str, y: str) -> list[str]:
    """The longest unavoidable word of each of the four binary forms."""
    members = sorted(b.factors)
    rev = sorted(m[::-1] for m in members)
    pr = b.prefix[::-1] if b.prefix else None
    sr = b.suffix[::-1] if b.suffix else None
    found = []
    for p, q in ((x, y), (y, x)):
        k = _max_unavoidable_run(b.prefix, b.suffix, members, p, q)
        if k:
            found.append(p * k + q)
        k = _max_unavoidable_run(sr, pr, rev, p, q)
        if k:
            found.append(q + p * k)
    return found


def standalone_reduce(b: LowerBound, sigma: Union[int, Alphabet, Iterable[str]]) -> LowerBound:
    """Add the unavoidable words missing from a bound over a binary alphabet.

    ``sigma`` is the alphabet (or just its size) the bound's words live in.
    """
    if isinstance(sigma, int):
        size, letters = sigma, None
    elif isinstance(sigma, Alphabet):
        size, letters = sigma.size, sigma.letters
    else:
        letters = tuple(sorted(set(sigma)))
        size = len(letters)
    if size != 2 or b.is_bottom or b.constant is not None:
        return b
    used = letters_of(b.words())
    if letters is None:
        if len(used) < 2:
            return b
        letters = tuple(sorted(used))
    if not used <= set(letters):
        return b
    x, y = letters
    code = b.factors
    while True:
        new = [w for w in unavoidable_candidates(LowerBound(False, None, b.prefix, b.suffix, code), x, y)
               if not any(w in m for m in code)]
        if not new:
            break
        for w in new:
            code = antichain_insert(code, w)
    if code == b.factors:
        return b
    return basic_reduce(LowerBound(False, None, b.prefix, b.suffix, code))
