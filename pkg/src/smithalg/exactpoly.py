"""Univariate polynomials over the rationals.

Coefficients are stored densely, low degree first, as ``Fraction`` values.
Besides ring arithmetic the module provides the Taylor shift ``p(X+k)``,
the discrete antiderivative used to build Casimir elements, the extended
Euclidean algorithm and a factorization over Q that splits off every
rational root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence, Union

from .errors import DomainError

Scalar = Union[int, Fraction]

__all__ = [
    "Poly",
    "FactoredFactor",
    "FactoredPoly",
    "poly_shift",
    "discrete_antiderivative",
    "extended_gcd",
    "poly_gcd",
    "square_free_decomposition",
    "rational_roots",
    "factor_over_rationals",
    "format_rational",
]


def format_rational(c: Fraction) -> str:
    """``p/q`` or ``p`` for integers; the canonical text and JSON form."""
    return str(Fraction(c))


class Poly:
    """Dense univariate polynomial with rational coefficients.

    The zero polynomial has an empty coefficient tuple and ``degree`` None.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: Sequence[Fraction]) -> Poly:
        # caller guarantees Fraction entries; only trims
        p = cls.__new__(cls)
        n = len(coeffs)
        while n and coeffs[n - 1] == 0:
            n -= 1
        p.coeffs = tuple(coeffs[:n])
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        return cls((c,))

    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> Poly:
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> Poly:
        p = cls.const(1)
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __neg__(self) -> Poly:
        return Poly._raw([-c for c in self.coeffs])

    def __add__(self, other) -> Poly:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> Poly:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return Poly._raw([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> Poly:
        if isinstance(c, Poly):
            return NotImplemented
        return self * (1 / Fraction(c))

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise DomainError("negative polynomial power")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv = 1 / other.lead
        if len(rem) - 1 < db:
            return ZERO, self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                q = c * inv
                quot[k - db] = q
                for i, b in enumerate(other.coeffs):
                    rem[k - db + i] -= q * b
        return Poly._raw(quot), Poly._raw(rem[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def divides(self, other: Poly) -> bool:
        """True iff ``self`` divides ``other`` exactly."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def derivative(self) -> Poly:
        return Poly._raw([c * k for k, c in enumerate(self.coeffs)][1:])

    def shift(self, k: Scalar) -> Poly:
        """Return ``p(X + k)``."""
        k = Fraction(k)
        if k == 0 or len(self.coeffs) <= 1:
            return self
        # Horner in the basis of (X + k)
        out: list[Fraction] = []
        for c in reversed(self.coeffs):
            nxt = [Fraction(0)] * (len(out) + 1)
            for i, a in enumerate(out):
                nxt[i + 1] += a
                nxt[i] += a * k
            nxt[0] += c
            out = nxt
        return Poly._raw(out)

    def compose(self, inner: Poly) -> Poly:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def format(self, var: str = "H") -> str:
        """Human-readable text, highest degree first, parseable back."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = format_rational(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{format_rational(a)}*{mono}"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format("X")

    def __repr__(self) -> str:
        return f"Poly({self.format('X')!r})"

    def to_json(self) -> dict:
        return {"coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Poly:
        return cls(Fraction(c) for c in data["coeffs"])


def _coerce(other) -> Poly | None:
    if isinstance(other, Poly):
        return other
    if isinstance(other, (int, Fraction)):
        return Poly.const(other)
    return None


ZERO = Poly()
ONE = Poly((1,))
X = Poly((0, 1))


def poly_shift(p: Poly, k: Scalar) -> Poly:
    return p.shift(k)


def discrete_antiderivative(f: Poly) -> Poly:
    """The unique ``u`` with ``u(X+1) - u(X) = 2 f(X)`` and ``u(0) = 0``.

    Solved top-down: the forward difference of ``X^k`` has leading term
    ``k X^(k-1)``, so the system is triangular in the monomial basis.
    """
    if f.is_zero():
        return ZERO
    m = f.degree
    residual = [2 * c for c in f.coeffs]
    u = [Fraction(0)] * (m + 2)
    for k in range(m + 1, 0, -1):
        ck = residual[k - 1] / k
        if not ck:
            continue
        u[k] = ck
        # subtract ck * ((X+1)^k - X^k)
        binom = 1
        for i in range(k):
            residual[i] -= ck * binom
            binom = binom * (k - i) // (i + 1)
    return Poly._raw(u)


def extended_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``g`` monic, ``g = s*a + t*b``."""
    if a.is_zero() and b.is_zero():
        raise DomainError("extended_gcd of two zero polynomials")
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lead
    return r0 * inv, s0 * inv, t0 * inv


def poly_gcd(a: Poly, b: Poly) -> Poly:
    if a.is_zero() and b.is_zero():
        return ZERO
    return extended_gcd(a, b)[0]


def square_free_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic square-free, pairwise coprime parts with multiplicity."""
    if p.is_zero():
        raise DomainError("square-free decomposition of zero")
    p = p.monic()
    if p.degree == 0:
        return []
    out: list[tuple[Poly, int]] = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    i = 1
    while b.degree and b.degree > 0:
        dd = c - b.derivative()
        g = poly_gcd(b, dd) if not dd.is_zero() else b
        if g.degree and g.degree > 0:
            out.append((g, i))
        b = b // g
        c = dd // g
        i += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for k in range(1, isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return small + large[::-1]


def _integer_content(p: Poly) -> list[int]:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints]


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots, ascending."""
    if p.is_zero():
        raise DomainError("roots of the zero polynomial")
    roots: set[Fraction] = set()
    cs = list(p.coeffs)
    if cs[0] == 0:
        roots.add(Fraction(0))
        k = next(i for i, c in enumerate(cs) if c)
        p = Poly._raw(cs[k:])
    if p.degree == 0:
        return sorted(roots)
    ints = _integer_content(p)
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and p(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


@dataclass(frozen=True)
class FactoredFactor:
    factor: Poly
    multiplicity: int
    certified_irreducible: bool


@dataclass(frozen=True)
class FactoredPoly:
    """``unit * prod(factor ** multiplicity)``; factors monic and pairwise coprime."""

    unit: Fraction
    factors: tuple[FactoredFactor, ...]

    def expand(self) -> Poly:
        p = Poly.const(self.unit)
        for fac in self.factors:
            p = p * fac.factor ** fac.multiplicity
        return p

    @property
    def is_split(self) -> bool:
        return all(f.factor.degree == 1 for f in self.factors)

    @property
    def is_primary(self) -> bool:
        return len(self.factors) == 1

    def primary_parts(self) -> list[Poly]:
        return [f.factor ** f.multiplicity for f in self.factors]


def _factor_key(fac: FactoredFactor):
    p = fac.factor
    if p.degree == 1:
        return (1, -p.coeffs[0], ())
    return (p.degree, Fraction(0), p.coeffs)


def factor_over_rationals(g: Poly) -> FactoredPoly:
    """Square-free split, then peel off every rational root as a linear factor.

    Linear factors are certified irreducible; a nonlinear residual without
    rational roots is reported as one uncertified factor.
    """
    if g.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    factors: list[FactoredFactor] = []
    for part, mult in square_free_decomposition(g):
        residual = part
        for r in rational_roots(part):
            lin = Poly((-r, 1))
            factors.append(FactoredFactor(lin, mult, True))
            residual = residual // lin
        if residual.degree and residual.degree > 0:
            factors.append(FactoredFactor(residual.monic(), mult, residual.degree == 1))
    factors.sort(key=_factor_key)
    return FactoredPoly(g.lead, tuple(factors))
