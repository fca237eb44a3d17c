"""Smith algebras R(f) and their elements in PBW normal form.

R(f) is generated by E, F, H with

    EF - FE = f(H),   HE - EH = E,   HF - FH = -F.

Every element is stored as a combination of ordered monomials
``F^a H^b E^c``. Multiplication never swaps single letters: the only
reordering needed is ``E^c F^a``, whose normal form is cached per algebra,
and H-polynomials are moved across powers of F or E by shifting,

    p(H) F^a = F^a p(H - a),     E^c p(H) = p(H - c) E^c.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import NonTerminationError
from .exactpoly import ONE as POLY_ONE
from .exactpoly import Poly, discrete_antiderivative, format_rational
from .lincomb import LinComb

__all__ = ["PBWElement", "SmithAlgebra", "E", "F", "H", "ONE"]

Key = tuple  # (a, b, c): F^a H^b E^c


class PBWElement(LinComb):
    """Finite combination of ``F^a H^b E^c`` keyed by ``(a, b, c)``."""

    __slots__ = ("_grouped",)

    def __init__(self, terms=None):
        super().__init__(terms)
        self._grouped = None

    @classmethod
    def _wrap(cls, terms):
        obj = super()._wrap(terms)
        obj._grouped = None
        return obj

    @classmethod
    def scalar(cls, c) -> PBWElement:
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coeff=1) -> PBWElement:
        return cls({(a, b, c): coeff})

    @classmethod
    def from_h_poly(cls, p: Poly, f_power: int = 0, e_power: int = 0) -> PBWElement:
        """``F^f_power p(H) E^e_power``."""
        return cls._wrap({(f_power, j, e_power): c for j, c in enumerate(p.coeffs) if c})

    @classmethod
    def from_grouped(cls, grouped: dict) -> PBWElement:
        terms = {}
        for (a, c), p in grouped.items():
            for j, v in enumerate(p.coeffs):
                if v:
                    terms[(a, j, c)] = v
        return cls._wrap(terms)

    def grouped(self) -> dict:
        """``{(a, c): p}`` with ``self = sum F^a p(H) E^c``."""
        if self._grouped is None:
            acc: dict = {}
            for (a, b, c), v in self._terms.items():
                acc.setdefault((a, c), {})[b] = v
            self._grouped = {
                k: Poly._raw([d.get(j, Fraction(0)) for j in range(max(d) + 1)])
                for k, d in acc.items()
            }
        return self._grouped

    def is_fh(self) -> bool:
        """True iff no term contains E (element of R(F,H))."""
        return all(c == 0 for (_, _, c) in self._terms)

    def is_e_only(self) -> bool:
        return all(a == 0 and b == 0 for (a, b, _) in self._terms)

    def is_h_only(self) -> bool:
        return all(a == 0 and c == 0 for (a, _, c) in self._terms)

    def h_poly(self) -> Poly:
        """The polynomial p with self = p(H); requires ``is_h_only``."""
        if not self.is_h_only():
            raise ValueError("element is not a polynomial in H")
        return self.grouped().get((0, 0), Poly())

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (a, b, c), v in sorted(self._terms.items()):
            letters = []
            for name, k in (("F", a), ("H", b), ("E", c)):
                if k == 1:
                    letters.append(name)
                elif k > 1:
                    letters.append(f"{name}^{k}")
            mag = abs(v)
            if not letters:
                body = format_rational(mag)
            elif mag == 1:
                body = "*".join(letters)
            else:
                body = format_rational(mag) + "*" + "*".join(letters)
            pieces.append(("-" if v < 0 else "+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"PBWElement({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"F": a, "H": b, "E": c, "coeff": format_rational(v)}
                for (a, b, c), v in sorted(self._terms.items())
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> PBWElement:
        out: dict = {}
        for t in data["terms"]:
            key = (int(t.get("F", 0)), int(t.get("H", 0)), int(t.get("E", 0)))
            out[key] = out.get(key, 0) + Fraction(t["coeff"])
        return cls(out)


E = PBWElement({(0, 0, 1): 1})
F = PBWElement({(1, 0, 0): 1})
H = PBWElement({(0, 1, 0): 1})
ONE = PBWElement({(0, 0, 0): 1})


class SmithAlgebra:
    """The algebra R(f) together with u and the Casimir element.

    ``u`` defaults to the discrete antiderivative of f normalized by
    u(0) = 0. Passing ``u`` explicitly skips that computation and the
    consistency check; it exists so verification runs can be fed a
    deliberately broken algebra.
    """

    def __init__(self, f: Poly, u: Poly | None = None):
        self.f = f
        self.u = discrete_antiderivative(f) if u is None else u
        self.d = f.degree if f.degree is not None else 0
        # Omega = 2 F E + u(H + 1)
        self.casimir = PBWElement({(1, 0, 1): 2}) + PBWElement.from_h_poly(self.u.shift(1))
        # caches below are filled lazily; every entry is a pure function of f
        self._ef: dict = {}
        self._fsum: dict = {0: Poly()}
        self._shifts: dict = {}
        self._casimir_powers: list[PBWElement] = [ONE, self.casimir]

    def __repr__(self) -> str:
        return f"SmithAlgebra(f={self.f.format('H')!r})"

    @property
    def generators(self) -> dict[str, PBWElement]:
        return {"E": E, "F": F, "H": H}

    def _shift(self, p: Poly, k: int) -> Poly:
        if k == 0 or p.degree is None or p.degree == 0:
            return p
        key = (p, k)
        hit = self._shifts.get(key)
        if hit is None:
            hit = self._shifts[key] = p.shift(k)
        return hit

    def _f_sum(self, a: int) -> Poly:
        """sum_{m < a} f(H - m), so that E F^a = F^a E + F^(a-1) * this."""
        if a not in self._fsum:
            self._fsum[a] = self._f_sum(a - 1) + self.f.shift(-(a - 1))
        return self._fsum[a]

    def e_pow_f_pow(self, c: int, a: int) -> dict:
        """Normal form of ``E^c F^a`` as ``{(alpha, gamma): p}`` meaning F^alpha p(H) E^gamma."""
        key = (c, a)
        hit = self._ef.get(key)
        if hit is not None:
            return hit
        if c == 0 or a == 0:
            out = {(a, c): POLY_ONE}
        else:
            # E^c F^a = E^(c-1) F^a E + E^(c-1) F^(a-1) S_a(H)
            out = {}
            for (al, ga), p in self.e_pow_f_pow(c - 1, a).items():
                _acc(out, (al, ga + 1), p)
            s = self._f_sum(a)
            if not s.is_zero():
                for (al, ga), p in self.e_pow_f_pow(c - 1, a - 1).items():
                    _acc(out, (al, ga), p * self._shift(s, -ga))
            out = {k: p for k, p in out.items() if not p.is_zero()}
        self._ef[key] = out
        return out

    def mul(self, x: PBWElement, y: PBWElement) -> PBWElement:
        """Exact product in normal form."""
        if not x or not y:
            return PBWElement()
        acc: dict = {}
        gy = y.grouped()
        for (a1, c1), p1 in x.grouped().items():
            for (a2, c2), p2 in gy.items():
                for (al, ga), q in self.e_pow_f_pow(c1, a2).items():
                    # F^a1 p1(H) F^al q(H) E^ga p2(H) E^c2
                    prod = self._shift(p1, -al) * q * self._shift(p2, -ga)
                    _acc(acc, (a1 + al, ga + c2), prod)
        return PBWElement.from_grouped({k: p for k, p in acc.items() if not p.is_zero()})

    def product(self, factors: Iterable[PBWElement]) -> PBWElement:
        out = ONE
        for x in factors:
            out = self.mul(out, x)
        return out

    def power(self, x: PBWElement, k: int) -> PBWElement:
        out = ONE
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def commutator(self, x: PBWElement, y: PBWElement) -> PBWElement:
        return self.mul(x, y) - self.mul(y, x)

    def kazhdan_degree(self, x: PBWElement) -> int | None:
        """max a(d+1) + b + c(d+1) over terms; None for the zero element."""
        if not x:
            return None
        w = self.d + 1
        return max(a * w + b + c * w for (a, b, c) in x)

    def is_central(self, x: PBWElement) -> bool:
        return all(not self.commutator(x, g) for g in (E, F, H))

    def ad_e_nilpotency_index(self, x: PBWElement, cap: int) -> int:
        """Least N <= cap with (ad E)^N x = 0."""
        y = x
        for n in range(cap + 1):
            if not y:
                return n
            y = self.commutator(E, y)
        raise NonTerminationError(f"(ad E)^N x nonzero for all N <= {cap}")

    def casimir_power(self, k: int) -> PBWElement:
        while len(self._casimir_powers) <= k:
            self._casimir_powers.append(self.mul(self._casimir_powers[-1], self.casimir))
        return self._casimir_powers[k]

    def poly_in_casimir(self, p: Poly) -> PBWElement:
        """p(Omega)."""
        out = PBWElement()
        for k, c in enumerate(p.coeffs):
            if c:
                out = out + self.casimir_power(k).scale(c)
        return out

    def h_element(self, p: Poly) -> PBWElement:
        return PBWElement.from_h_poly(p)


def _acc(acc: dict, key, p: Poly) -> None:
    prev = acc.get(key)
    acc[key] = p if prev is None else prev + p
