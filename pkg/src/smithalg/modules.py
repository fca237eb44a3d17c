"""Whittaker and Verma modules over R(f) with exact actions.

A Whittaker module V with central annihilator (g(Omega)) and cyclic
Whittaker vector w has basis ``F^i H^j w`` with ``0 <= i < deg g``; for
g = 0 (the universal module Y_eta) i is unbounded. Vectors are tables
``(i, j) -> coeff``. Internally the actions work on the grouped form
``{i: p}`` meaning ``sum F^i p(H) w``.

The reduction rule is g(Omega^eta), whose top F-term is (2 eta(E))^n F^n;
since g(Omega) w = 0 and ``x w = x^eta w``, it rewrites ``F^n w`` into
lower F-degree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .center import WhittakerCharacter, eta_projection, omega_eta_power
from .errors import DomainError
from .exactpoly import FactoredPoly, Poly, factor_over_rationals, format_rational
from .lincomb import LinComb
from .linalg import Echelon, kernel
from .pbw import E, F, H, PBWElement, SmithAlgebra

__all__ = [
    "ModuleVector",
    "WhittakerModule",
    "VermaVector",
    "VermaModule",
    "default_truncation",
    "whittaker_vector_solve",
    "central_annihilator",
    "isomorphism_test",
]


class ModuleVector(LinComb):
    """``sum coeff * F^i H^j w`` keyed by ``(i, j)``."""

    __slots__ = ()

    @classmethod
    def from_grouped(cls, grouped: dict) -> ModuleVector:
        terms = {}
        for i, p in grouped.items():
            for j, c in enumerate(p.coeffs):
                if c:
                    terms[(i, j)] = c
        return cls._wrap(terms)

    def grouped(self) -> dict:
        acc: dict = {}
        for (i, j), c in self._terms.items():
            acc.setdefault(i, {})[j] = c
        return {
            i: Poly._raw([d.get(j, Fraction(0)) for j in range(max(d) + 1)])
            for i, d in acc.items()
        }

    def as_element(self) -> PBWElement:
        """The R(F,H) element sum coeff F^i H^j (so that v = element * w)."""
        return PBWElement({(i, j, 0): c for (i, j), c in self._terms.items()})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return f"({self.as_element()})*w"

    def __repr__(self) -> str:
        return f"ModuleVector({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"F": i, "H": j, "coeff": format_rational(c)}
                for (i, j), c in sorted(self._terms.items())
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> ModuleVector:
        out: dict = {}
        for t in data["terms"]:
            key = (int(t.get("F", 0)), int(t.get("H", 0)))
            out[key] = out.get(key, 0) + Fraction(t["coeff"])
        return cls(out)


def _add_into(acc: dict, i: int, p: Poly) -> None:
    prev = acc.get(i)
    acc[i] = p if prev is None else prev + p


def _clean(acc: dict) -> dict:
    return {i: p for i, p in acc.items() if not p.is_zero()}


class WhittakerModule:
    """V = R / (R g(Omega) + R ker(eta)) with cyclic vector w = image of 1.

    ``g`` must be monic, or zero for the universal module Y_eta.
    """

    def __init__(self, alg: SmithAlgebra, eta: WhittakerCharacter, g: Poly):
        if not isinstance(eta, WhittakerCharacter):
            eta = WhittakerCharacter(eta)
        if not g.is_zero() and g.lead != 1:
            raise DomainError(f"annihilator generator must be monic, got {g.format('Omega')}")
        self.alg = alg
        self.eta = eta
        self.g = g
        self.n: int | None = g.degree  # None for the universal module
        self.factored: FactoredPoly | None = None if g.is_zero() else factor_over_rationals(g)
        self._omega_eta_powers = [omega_eta_power(alg, eta, q) for q in range((self.n or 0) + 1)]
        if g.is_zero():
            self.reduction_rule = PBWElement()
        else:
            rule = PBWElement()
            for q, c in enumerate(g.coeffs):
                if c:
                    rule = rule + self._omega_eta_powers[q].scale(c)
            self.reduction_rule = rule
        self._rem: dict = {}
        if self.n:
            top = (2 * eta.eta_e) ** self.n
            grouped = self.reduction_rule.grouped()
            assert grouped.get((self.n, 0)) == Poly.const(top)
            scale = -1 / top
            self._rem = {
                a: p * scale for (a, _), p in grouped.items() if a < self.n and not p.is_zero()
            }
        # E F^i = F^i E + F^(i-1) S_i(H); S_i tabulated once for i < n
        if self.n:
            self._e_table = [alg._f_sum(i) for i in range(self.n)]
        else:
            self._e_table = None

    def __repr__(self) -> str:
        return (
            f"WhittakerModule(f={self.alg.f.format('H')!r}, eta={format_rational(self.eta.eta_e)}, "
            f"g={self.g.format('Omega')!r})"
        )

    @property
    def is_universal(self) -> bool:
        return self.g.is_zero()

    @property
    def w(self) -> ModuleVector:
        return ModuleVector({(0, 0): 1})

    cyclic_vector = w

    def _s(self, i: int) -> Poly:
        if self._e_table is not None and i < len(self._e_table):
            return self._e_table[i]
        return self.alg._f_sum(i)

    def basis_window(self, J: int, i_max: int | None = None) -> list[tuple[int, int]]:
        """Basis labels (i, j) with j <= J; i < n, or i <= i_max (default J) if universal."""
        top = self.n if self.n is not None else (J if i_max is None else i_max) + 1
        return [(i, j) for i in range(top) for j in range(J + 1)]

    def kazhdan_degree(self, v: ModuleVector) -> int | None:
        if not v:
            return None
        w = self.alg.d + 1
        return max(i * w + j for (i, j) in v)

    # -- grouped-form kernels -------------------------------------------------

    def _reduce(self, acc: dict) -> dict:
        acc = _clean(acc)
        n = self.n
        if not n:
            if n == 0:  # g = 1: V = 0
                return {}
            return acc
        while True:
            over = [i for i in acc if i >= n]
            if not over:
                return acc
            i = max(over)
            q = acc.pop(i)
            # F^i q(H) w = F^(i-n) q(H+n) F^n w,  F^n w = sum_k F^k rem_k(H) w
            for k, r in self._rem.items():
                _add_into(acc, i - n + k, q.shift(n - k) * r)
            acc = _clean(acc)

    def _apply_e(self, grouped: dict) -> dict:
        e = self.eta.eta_e
        acc: dict = {}
        for i, p in grouped.items():
            _add_into(acc, i, p.shift(-1) * e)
            if i > 0:
                s = self._s(i)
                if not s.is_zero():
                    _add_into(acc, i - 1, s * p)
        return _clean(acc)

    def _apply_h_poly(self, grouped: dict, hp: Poly) -> dict:
        return _clean({i: hp.shift(-i) * p for i, p in grouped.items()})

    def _apply_f_power(self, grouped: dict, a: int) -> dict:
        if a == 0:
            return grouped
        return self._reduce({i + a: p for i, p in grouped.items()})

    # -- public actions -----------------------------------------------------

    def act_generator(self, gen: str, v: ModuleVector) -> ModuleVector:
        grouped = v.grouped()
        if gen == "E":
            out = self._apply_e(grouped)
        elif gen == "F":
            out = self._apply_f_power(grouped, 1)
        elif gen == "H":
            out = self._apply_h_poly(grouped, Poly.x())
        else:
            raise DomainError(f"unknown generator {gen!r}")
        return ModuleVector.from_grouped(out)

    def act_element(self, x: PBWElement, v: ModuleVector) -> ModuleVector:
        """x . v, each monomial F^a p(H) E^c applied right to left."""
        base = v.grouped()
        e_powers = [base]
        acc: dict = {}
        for (a, c), hp in sorted(x.grouped().items()):
            while len(e_powers) <= c:
                e_powers.append(self._apply_e(e_powers[-1]))
            part = self._apply_h_poly(e_powers[c], hp)
            part = self._apply_f_power(part, a)
            for i, p in part.items():
                _add_into(acc, i, p)
        return ModuleVector.from_grouped(_clean(acc))

    def monomial_action(self, a: int, b: int, v: ModuleVector) -> ModuleVector:
        """F^a H^b . v"""
        out = self._apply_h_poly(v.grouped(), Poly.monomial(b))
        return ModuleVector.from_grouped(self._apply_f_power(out, a))

    def act_via_projection(self, x: PBWElement, v: ModuleVector) -> ModuleVector:
        """x . v computed as the class of (x * v_elem)^eta; a second route to act_element."""
        elem = eta_projection(self.alg, self.eta, self.alg.mul(x, v.as_element()))
        return self.reduce_element(elem)

    def reduce_element(self, x: PBWElement) -> ModuleVector:
        """x . w for x in R(F,H), written in the module basis."""
        if not x.is_fh():
            x = eta_projection(self.alg, self.eta, x)
        grouped: dict = {}
        for (a, _), p in x.grouped().items():
            _add_into(grouped, a, p)
        return ModuleVector.from_grouped(self._reduce(grouped))

    def omega_power_vector(self, k: int, v: ModuleVector | None = None) -> ModuleVector:
        vec = self.w if v is None else v
        for _ in range(k):
            vec = self.act_element(self.alg.casimir, vec)
        return vec

    def central_vector(self, p: Poly, v: ModuleVector | None = None) -> ModuleVector:
        """p(Omega) . v (default v = w)."""
        vec = self.w if v is None else v
        out = ModuleVector()
        for c in reversed(p.coeffs):
            out = self.act_element(self.alg.casimir, out) + vec.scale(c)
        return out

    def is_whittaker_vector(self, v: ModuleVector) -> bool:
        return self.act_generator("E", v) == v.scale(self.eta.eta_e)


def default_truncation(mod: WhittakerModule) -> int:
    """n (deg u + 1) + 8: every Omega^k w with k < n fits in the window."""
    du = mod.alg.u.degree or 0
    n = mod.n if mod.n is not None else 1
    return n * (du + 1) + 8


def whittaker_vector_solve(mod: WhittakerModule, J: int | None = None) -> list[ModuleVector]:
    """Basis of Whittaker vectors supported on j <= J.

    Solves (E - eta(E)) v = 0 exactly over the window; the returned basis is
    in reduced echelon form so equal spaces give equal output.
    """
    if J is None:
        J = default_truncation(mod)
    if J < 0:
        raise DomainError("truncation depth must be nonnegative")
    labels = mod.basis_window(J)
    e = mod.eta.eta_e
    images = []
    for lab in labels:
        b = ModuleVector({lab: 1})
        images.append(mod.act_generator("E", b) - b.scale(e))
    ech = Echelon()
    for dep in kernel(images):
        ech.insert({labels[k]: c for k, c in dep.items()})
    return [ModuleVector(row) for row in ech.basis()]


class VermaVector(LinComb):
    """``sum coeff * F^k v_lambda`` keyed by k."""

    __slots__ = ()

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{format_rational(c)}*F^{k}*v" for k, c in sorted(self._terms.items()))

    def to_json(self) -> dict:
        return {"terms": [{"F": k, "coeff": format_rational(c)} for k, c in sorted(self._terms.items())]}


class VermaModule:
    """M_lambda = R (x)_{R(E,H)} C_lambda: E v = 0, H v = lambda v, basis F^k v."""

    def __init__(self, alg: SmithAlgebra, lam):
        self.alg = alg
        self.lam = Fraction(lam)

    def __repr__(self) -> str:
        return f"VermaModule(f={self.alg.f.format('H')!r}, lambda={format_rational(self.lam)})"

    @property
    def v(self) -> VermaVector:
        return VermaVector({0: 1})

    cyclic_vector = v

    def basis_vector(self, k: int) -> VermaVector:
        return VermaVector({k: 1})

    def act_element(self, x: PBWElement, vec: VermaVector) -> VermaVector:
        """x F^k v rewritten by normal ordering; terms ending in E kill v."""
        acc: dict = {}
        for k, coeff in vec.items():
            prod = self.alg.mul(x, PBWElement.monomial(k, 0, 0))
            for (a, b, c), val in prod.items():
                if c:
                    continue
                acc[a] = acc.get(a, 0) + coeff * val * self.lam**b
        return VermaVector(acc)

    def act_generator(self, gen: str, vec: VermaVector) -> VermaVector:
        gens = {"E": E, "F": F, "H": H}
        if gen not in gens:
            raise DomainError(f"unknown generator {gen!r}")
        return self.act_element(gens[gen], vec)

    def casimir_scalar(self) -> Fraction:
        """u(lambda + 1), the value of Omega on M_lambda."""
        return self.alg.u(self.lam + 1)


def central_annihilator(module, vector=None, maxdeg: int | None = None) -> Poly:
    """Least-degree monic p with p(Omega) v = 0 (v defaults to the cyclic vector).

    Found as the first linear dependence among Omega^k v, k <= maxdeg; the
    zero polynomial means none was found within the bound.
    """
    v = module.cyclic_vector if vector is None else vector
    if maxdeg is None:
        n = getattr(module, "n", None)
        maxdeg = n if n is not None else 8
    omega = module.alg.casimir
    ech = Echelon()
    cur = v
    for k in range(maxdeg + 1):
        dep = ech.insert(dict(cur), tag=k)
        if dep is not None:
            # dep[k] == 1 and sum dep[t] Omega^t v == 0
            coeffs = [dep.get(t, Fraction(0)) for t in range(k + 1)]
            return Poly(coeffs).monic()
        cur = module.act_element(omega, cur)
    return Poly()


def isomorphism_test(v1: WhittakerModule, v2: WhittakerModule, J: int | None = None) -> bool | None:
    """Isomorphism of irreducible Whittaker modules; None when undecided.

    Two irreducible Whittaker modules of the same type are isomorphic iff
    they share a central character. Inputs that cannot both be certified
    irreducible give None.
    """
    from .structure import certify_irreducible

    if v1.alg.f != v2.alg.f or v1.alg.u != v2.alg.u or v1.eta != v2.eta:
        raise DomainError("modules must be built over the same algebra and character")
    c1 = certify_irreducible(v1, J)
    c2 = certify_irreducible(v2, J)
    if c1.verdict is not True or c2.verdict is not True:
        return None
    return central_annihilator(v1) == central_annihilator(v2)


def vectors_as_dicts(vectors: Iterable[LinComb]) -> list[dict]:
    return [dict(v) for v in vectors]
