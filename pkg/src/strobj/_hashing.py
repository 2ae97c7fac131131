"""Hash caching for frozen dataclasses that serve as cache keys."""

from dataclasses import fields


def hash_once(cls):
    """Replace the dataclass ``__hash__`` by one that is computed on first use and stored."""
    names = tuple(f.name for f in fields(cls))

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(tuple(getattr(self, n) for n in names))
            object.__setattr__(self, "_hash", h)
        return h

    cls.__hash__ = __hash__
    return cls
