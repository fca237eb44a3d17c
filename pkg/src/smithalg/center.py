"""Whittaker model of the center.

For a nonsingular character eta of R(E) (determined by the scalar eta(E)),
R splits as R(F,H) + R*ker(eta). The projection x -> x^eta keeps the R(F,H)
component; in normal form ``F^a H^b E^c`` it is the coefficient filter
``E^c -> eta(E)^c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .linalg import Echelon
from .pbw import ONE, PBWElement, SmithAlgebra

__all__ = [
    "WhittakerCharacter",
    "eta_projection",
    "eta_value",
    "reduced_action",
    "omega_eta",
    "omega_eta_power",
    "FreenessReport",
    "freeness_basis_matrix",
]


@dataclass(frozen=True)
class WhittakerCharacter:
    """A nonsingular character of R(E), stored as its value on E."""

    eta_e: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eta_e", Fraction(self.eta_e))
        if self.eta_e == 0:
            raise DomainError("character of R(E) is singular: eta(E) = 0")


def eta_projection(alg: SmithAlgebra, eta: WhittakerCharacter, x: PBWElement) -> PBWElement:
    """x^eta: the unique v in R(F,H) with x 1_eta = v 1_eta."""
    out: dict = {}
    e = eta.eta_e
    for (a, b, c), v in x.items():
        key = (a, b, 0)
        nv = out.get(key, 0) + v * e**c
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)
    return PBWElement(out)


def eta_value(eta: WhittakerCharacter, x: PBWElement) -> Fraction:
    """eta(x) for x a polynomial in E."""
    if not x.is_e_only():
        raise DomainError("eta is only defined on R(E)")
    return sum((v * eta.eta_e**c for (_, _, c), v in x.items()), Fraction(0))


def reduced_action(alg: SmithAlgebra, eta: WhittakerCharacter, x: PBWElement, v: PBWElement) -> PBWElement:
    """x . v = (x v)^eta - eta(x) v for x in R(E), v in R(F,H)."""
    if not x.is_e_only():
        raise DomainError("reduced action requires x in R(E)")
    if not v.is_fh():
        raise DomainError("reduced action requires v in R(F,H)")
    return eta_projection(alg, eta, alg.mul(x, v)) - v.scale(eta_value(eta, x))


def omega_eta(alg: SmithAlgebra, eta: WhittakerCharacter) -> PBWElement:
    """Omega^eta = 2 eta(E) F + u(H+1)."""
    return eta_projection(alg, eta, alg.casimir)


def omega_eta_power(alg: SmithAlgebra, eta: WhittakerCharacter, q: int) -> PBWElement:
    """(Omega^eta)^q multiplied out inside R(F,H)."""
    base = omega_eta(alg, eta)
    out = ONE
    for _ in range(q):
        out = alg.mul(out, base)
    return out


@dataclass
class FreenessReport:
    k: int
    row_labels: list  # monomials F^i H^j as (i, j)
    col_labels: list  # products H^p (Omega^eta)^q as (p, q)
    matrix: list = field(repr=False)
    rank: int = 0

    @property
    def square(self) -> bool:
        return len(self.row_labels) == len(self.col_labels)

    @property
    def full_rank(self) -> bool:
        return self.square and self.rank == len(self.row_labels)


def freeness_basis_matrix(alg: SmithAlgebra, eta: WhittakerCharacter, k: int) -> FreenessReport:
    """Coordinates of H^p (Omega^eta)^q, p + q(d+1) <= k, in the F^i H^j basis of R(F,H)_(k).

    Rows are monomials (i, j) with i(d+1) + j <= k, columns the pairs (p, q);
    both in lexicographic order. A coefficient outside the row window would
    contradict the filtration and raises.
    """
    if k < 0:
        raise DomainError("filtration level must be nonnegative")
    w = alg.d + 1
    rows = [(i, j) for i in range(k // w + 1) for j in range(k - i * w + 1)]
    cols = [(p, q) for p in range(k + 1) for q in range((k - p) // w + 1)]
    row_index = {rc: n for n, rc in enumerate(rows)}
    powers = [omega_eta_power(alg, eta, q) for q in range(k // w + 1)]
    matrix = [[Fraction(0)] * len(cols) for _ in rows]
    ech = Echelon()
    for col, (p, q) in enumerate(cols):
        elem = alg.mul(PBWElement.monomial(0, p, 0), powers[q])
        vec = {}
        for (a, b, c), v in elem.items():
            if (a, b) not in row_index:
                raise AssertionError(f"H^{p} (Omega^eta)^{q} leaves the filtration level {k}")
            matrix[row_index[(a, b)]][col] = v
            vec[(a, b)] = v
        ech.insert(vec)
    return FreenessReport(k=k, row_labels=rows, col_labels=cols, matrix=matrix, rank=ech.rank)
