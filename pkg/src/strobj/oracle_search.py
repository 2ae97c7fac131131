"""Exhaustive witness search for unavoidability questions.

Kept apart from :mod:`strobj.standalone` on purpose: this module never
reasons about runs or heads, it only walks the finite state space of
"last few letters + which factors were already seen".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .props import LowerBound
from .words import Alphabet, letters_of

MAX_LEN_GUARD = 12


@dataclass(frozen=True)
class Verdict:
    kind: str  # "unavoidable" | "witness" | "inconclusive"
    witness: Optional[str] = None

    @property
    def unavoidable(self) -> bool:
        return self.kind == "unavoidable"


def search_letters(b: LowerBound, candidate: str, alphabet: Optional[Alphabet]) -> list[str]:
    used = letters_of(b.words()) | set(candidate)
    if alphabet is None or alphabet.is_open:
        return sorted(used) + Alphabet().fresh(used, 2)
    return list(alphabet.letters)


def brute_unavoidable(b: LowerBound, candidate: str, alphabet: Optional[Alphabet] = None,
                      max_len: Optional[int] = None) -> Verdict:
    """Breadth-first search for the shortest word of the bound avoiding ``candidate``.

    States are merged on (window, satisfied factors); once the reachable state
    set is exhausted without a witness the candidate is unavoidable.  Hitting
    ``max_len`` first yields ``inconclusive``.
    """
    if b.is_bottom:
        return Verdict("unavoidable")
    if not candidate:
        return Verdict("unavoidable")
    if b.constant is not None:
        c = b.constant
        return Verdict("unavoidable") if candidate in c else Verdict("witness", c)
    letters = search_letters(b, candidate, alphabet)
    members = sorted(b.factors)
    suffix = b.suffix or ""
    width = max([len(candidate), len(suffix) + 1] + [len(m) for m in members])
    full = (1 << len(members)) - 1

    def seen_mask(word: str, mask: int) -> int:
        for i, m in enumerate(members):
            if not mask >> i & 1 and word.endswith(m):
                mask |= 1 << i
        return mask

    start = b.prefix or ""
    if candidate in start:
        return Verdict("unavoidable")
    mask0 = 0
    for i, m in enumerate(members):
        if m in start:
            mask0 |= 1 << i
    frontier = deque([(start, mask0)])
    # emptiness is part of the state: ε itself is never a witness
    visited = {(start[-(width - 1):] if width > 1 else "", mask0, bool(start))}
    cut = False
    while frontier:
        word, mask = frontier.popleft()
        if word and mask == full and word.endswith(suffix):
            return Verdict("witness", word)
        if max_len is not None and len(word) >= max_len:
            cut = True
            continue
        for c in letters:
            nxt = word + c
            if nxt.endswith(candidate):
                continue
            m2 = seen_mask(nxt, mask)
            key = (nxt[-(width - 1):] if width > 1 else "", m2, True)
            if key in visited:
                continue
            visited.add(key)
            frontier.append((nxt, m2))
    return Verdict("inconclusive" if cut else "unavoidable")


def four_form_candidates(x: str, y: str, kmax: int) -> Iterable[str]:
    for k in range(1, kmax + 1):
        yield x * k + y
        yield y * k + x
        yield y + x * k
        yield x + y * k
