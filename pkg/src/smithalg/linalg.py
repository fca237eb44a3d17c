"""Exact sparse linear algebra over Q.

Vectors are mappings from hashable, mutually comparable keys to ``Fraction``.
``Echelon`` keeps a reduced row echelon basis and can record, for every
stored row, which tagged input vectors it is a combination of. That single
tool answers rank, membership, solving and kernel questions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Vec = dict


def _axpy(dst: dict, a: Fraction, src: Mapping) -> None:
    """dst += a * src, dropping zeros."""
    for k, v in src.items():
        nv = dst.get(k, 0) + a * v
        if nv:
            dst[k] = nv
        else:
            dst.pop(k, None)


class Echelon:
    """Incrementally built reduced echelon basis.

    Rows are kept fully reduced against each other's pivots, so reducing a
    vector is a single pass over the pivots it touches.
    """

    def __init__(self) -> None:
        self.rows: dict[Hashable, tuple[dict, dict]] = {}  # pivot -> (row, combo)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping, tag: Hashable = None) -> tuple[dict, dict]:
        """Return ``(residual, combo)``.

        ``vec == residual + sum(combo[t] * input_t)`` modulo untagged inputs,
        where ``combo`` starts as ``{tag: 1}`` when a tag is given and the sign
        convention is ``residual = vec - (stored rows)``. So ``combo`` gives
        residual as a combination of tagged inputs.
        """
        v = {k: Fraction(c) for k, c in vec.items() if c}
        combo: dict = {tag: Fraction(1)} if tag is not None else {}
        for p in [p for p in v if p in self.rows]:
            c = v.get(p)
            if not c:
                continue
            row, rc = self.rows[p]
            _axpy(v, -c, row)
            _axpy(combo, -c, rc)
        return v, combo

    def insert(self, vec: Mapping, tag: Hashable = None) -> dict | None:
        """Add a vector. Returns the dependency ``combo`` if it was redundant.

        A returned combo ``c`` satisfies ``sum(c[t] * input_t) in span(untagged)``.
        """
        v, combo = self.reduce(vec, tag)
        if not v:
            return combo
        pivot = max(v)
        inv = 1 / v[pivot]
        v = {k: c * inv for k, c in v.items()}
        combo = {k: c * inv for k, c in combo.items()}
        for p, (row, rc) in self.rows.items():
            c = row.get(pivot)
            if c:
                _axpy(row, -c, v)
                _axpy(rc, -c, combo)
        self.rows[pivot] = (v, combo)
        return None

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)[0]

    def basis(self) -> list[dict]:
        return [dict(self.rows[p][0]) for p in sorted(self.rows)]


def rank(vectors: Iterable[Mapping]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.insert(v)
    return ech.rank


def in_span(vec: Mapping, vectors: Iterable[Mapping]) -> bool:
    ech = Echelon()
    for v in vectors:
        ech.insert(v)
    return ech.contains(vec)


def same_span(a: list[Mapping], b: list[Mapping]) -> bool:
    ra, rb = rank(a), rank(b)
    return ra == rb == rank(list(a) + list(b))


def kernel(images: list[Mapping], modulo: Iterable[Mapping] = ()) -> list[dict]:
    """Basis of ``{c : sum c_k images[k] in span(modulo)}`` as dicts ``k -> c_k``."""
    ech = Echelon()
    for m in modulo:
        ech.insert(m)
    out = []
    for k, img in enumerate(images):
        dep = ech.insert(img, tag=k)
        if dep is not None:
            out.append({t: c for t, c in dep.items() if c})
    return out


def solve(columns: list[Mapping], target: Mapping) -> dict | None:
    """Some ``c`` with ``sum c_k columns[k] == target``, or None."""
    ech = Echelon()
    for k, col in enumerate(columns):
        ech.insert(col, tag=k)
    residual, combo = ech.reduce(target)
    if residual:
        return None
    # target - sum(...) = 0 with combo tracking the subtracted rows, negated
    return {t: -c for t, c in combo.items() if c}


def matrix_rank(rows: list[list[Fraction]]) -> int:
    return rank({j: c for j, c in enumerate(r) if c} for r in rows)
