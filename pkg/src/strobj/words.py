"""Word primitives shared by every lattice in the package.

Words are plain ``str`` values; a factor code is a ``frozenset`` of non-empty
words that forms an antichain under the substring order.
"""

from __future__ import annotations

from typing import Iterable, Optional

FactorCode = frozenset


class Alphabet:
    """Ordered letter set.  ``None`` letters means an open (unbounded) alphabet."""

    __slots__ = ("letters",)

    def __init__(self, letters: Optional[Iterable[str]] = None):
        if letters is None:
            self.letters = None
        else:
            uniq = sorted(set(letters))
            if not uniq:
                raise ValueError("alphabet must not be empty")
            if any(len(c) != 1 for c in uniq):
                raise ValueError("alphabet entries must be single characters")
            self.letters = tuple(uniq)

    @property
    def is_open(self) -> bool:
        return self.letters is None

    @property
    def size(self) -> Optional[int]:
        return None if self.letters is None else len(self.letters)

    def __contains__(self, c: str) -> bool:
        return self.letters is None or c in self.letters

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return "Alphabet(open)" if self.letters is None else f"Alphabet({''.join(self.letters)!r})"

    def fresh(self, used: Iterable[str], count: int) -> list[str]:
        """Up to ``count`` letters not in ``used``, smallest codes first."""
        used = set(used)
        if self.letters is not None:
            return [c for c in self.letters if c not in used][:count]
        out, code = [], 0x2460  # circled digits: unlikely to clash with program text
        while len(out) < count:
            c = chr(code)
            if c not in used:
                out.append(c)
            code += 1
        return out

    def spare(self, used: Iterable[str]) -> float:
        """How many letters lie outside ``used`` (infinite for an open alphabet)."""
        if self.letters is None:
            return float("inf")
        used = set(used)
        return sum(1 for c in self.letters if c not in used)


OPEN = Alphabet()


def is_factor(needle: str, hay: str) -> bool:
    return needle in hay


def longest_overlap(u: str, v: str) -> int:
    """Length of the longest suffix of ``u`` that is also a prefix of ``v``."""
    for n in range(min(len(u), len(v)), 0, -1):
        if u.endswith(v[:n]):
            return n
    return 0


def common_prefix(u: str, v: str) -> str:
    n = 0
    for x, y in zip(u, v):
        if x != y:
            break
        n += 1
    return u[:n]


def common_suffix(u: str, v: str) -> str:
    return common_prefix(u[::-1], v[::-1])[::-1]


def antichain_insert(code: FactorCode, w: str) -> FactorCode:
    if not w:
        raise ValueError("factor-code members must be non-empty")
    if any(w in m for m in code):
        return code
    return frozenset([m for m in code if m not in w] + [w])


def antichain(words: Iterable[str]) -> FactorCode:
    """Fold ``antichain_insert`` over ``words`` (empty words are skipped)."""
    # longest first: each word then needs one containment scan
    out: list[str] = []
    for w in sorted({w for w in words if w}, key=lambda s: (-len(s), s)):
        if not any(w in m for m in out):
            out.append(w)
    return frozenset(out)


def factors_of(w: str) -> set[str]:
    """All non-empty factors of ``w``."""
    return {w[i:j] for i in range(len(w)) for j in range(i + 1, len(w) + 1)}


def common_maximal_factors(a: FactorCode, b: FactorCode) -> FactorCode:
    """Join on factor codes: maximal words that are factors of a member of each side."""
    fa: set[str] = set()
    for m in a:
        fa |= factors_of(m)
    fb: set[str] = set()
    for m in b:
        fb |= factors_of(m)
    return antichain(fa & fb)


def letters_of(words: Iterable[str]) -> set[str]:
    out: set[str] = set()
    for w in words:
        out.update(w)
    return out
