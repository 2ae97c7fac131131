"""String objects: a reduced product of word-equation lower bounds and length
intervals over morphic images, with an abstract interpreter for a small
string language."""

from .context import DEFAULT_CTX, Ctx
from .morphism import IDENTITY, LENGTH, StandardMorphism, all_standard_morphisms, from_classes, normalize
from .objects import (
    BOTTOM_OBJECT,
    TOP_OBJECT,
    StringObject,
    close_universe,
    constant_object,
    eps_object,
    make_object,
    object_join,
    object_leq,
    object_meet,
    prune,
    reduce_object,
    widen_object,
)
from .props import INF, LowerBound, NonUnary, Unary, UnaryInterval, make_bound, unary
from .standalone import standalone_reduce
from .words import OPEN, Alphabet

__all__ = [
    "Alphabet",
    "BOTTOM_OBJECT",
    "Ctx",
    "DEFAULT_CTX",
    "IDENTITY",
    "INF",
    "LENGTH",
    "LowerBound",
    "NonUnary",
    "OPEN",
    "StandardMorphism",
    "StringObject",
    "TOP_OBJECT",
    "Unary",
    "UnaryInterval",
    "all_standard_morphisms",
    "close_universe",
    "constant_object",
    "eps_object",
    "from_classes",
    "make_bound",
    "make_object",
    "normalize",
    "object_join",
    "object_leq",
    "object_meet",
    "prune",
    "reduce_object",
    "standalone_reduce",
    "unary",
    "widen_object",
]
