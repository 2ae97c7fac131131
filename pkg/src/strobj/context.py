"""Session settings shared by reductions, operations and the interpreter."""

from __future__ import annotations

from dataclasses import dataclass

from ._hashing import hash_once
from .perfect import DEFAULT_BUDGET
from .words import OPEN, Alphabet


@hash_once
@dataclass(frozen=True)
class Ctx:
    alphabet: Alphabet = OPEN
    budget: int = DEFAULT_BUDGET
    widen_delay: int = 3


DEFAULT_CTX = Ctx()
