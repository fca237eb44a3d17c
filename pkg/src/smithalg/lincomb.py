"""Immutable finite linear combinations of basis labels with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterator, Mapping


class LinComb(Mapping):
    """Base for PBW elements and module vectors.

    Stores no zero coefficients; the empty table is zero. Subclasses only
    fix the key shape and the text/JSON rendering.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Hashable, object] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = c if type(c) is Fraction else Fraction(c)
                if c:
                    clean[k] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict):
        # trusted: Fraction values, zeros already dropped
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    def __getitem__(self, key) -> Fraction:
        return self._terms[key]

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return type(self) is type(other) and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return self._wrap(out)

    def __neg__(self):
        return self._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "LinComb":
        c = Fraction(c)
        if not c:
            return self._wrap({})
        return self._wrap({k: v * c for k, v in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def sorted_items(self):
        return sorted(self._terms.items())
