"""Submodule structure of a Whittaker module with Z_V = (g(Omega)), g != 0.

Submodules correspond to monic divisors d of g through d -> R d(Omega) w.
Submodule(d) is itself a Whittaker module with annihilator g/d and cyclic
vector d(Omega) w, hence has basis F^a H^b d(Omega) w with a < n - deg d.
Membership questions are answered by exact linear algebra over a window
of Kazhdan degrees; a generator F^a H^b d(Omega) w has a unique top
monomial F^(a + deg d) H^b, so a window reaching the tested degree is
already exact and the extra buffer only certifies that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import DomainError, InconsistencyError
from .exactpoly import FactoredPoly, Poly, extended_gcd, poly_gcd
from .linalg import Echelon
from .modules import ModuleVector, WhittakerModule, default_truncation, whittaker_vector_solve

__all__ = [
    "SubmoduleHandle",
    "DivisorLattice",
    "submodule",
    "divisor_lattice",
    "contains",
    "is_submodule_of",
    "relative_annihilator",
    "transporter_ideal",
    "quotient_annihilator",
    "crt_decompose",
    "CompositionSeries",
    "composition_series",
    "quotient_whittaker_dimension",
    "unique_maximal_submodule",
    "IrreducibilityCertificate",
    "certify_irreducible",
]

BUFFER = 5
CHECK_BUFFER = 10


@dataclass(frozen=True)
class SubmoduleHandle:
    parent: WhittakerModule = field(repr=False, compare=False)
    divisor: Poly
    generator: ModuleVector = field(repr=False)

    @property
    def codimension_degree(self) -> int:
        """deg(g / divisor): the F-depth of this submodule's basis."""
        return self.parent.n - self.divisor.degree

    @property
    def is_zero(self) -> bool:
        return self.divisor == self.parent.g

    @property
    def is_whole(self) -> bool:
        return self.divisor.degree == 0


def _require_finite(mod: WhittakerModule) -> None:
    if mod.is_universal:
        raise DomainError("g = 0: the submodule lattice is infinite (unsupported)")


def submodule(mod: WhittakerModule, d: Poly) -> SubmoduleHandle:
    """R d(Omega) w for a monic divisor d of g."""
    _require_finite(mod)
    d = d.monic()
    if not d.divides(mod.g):
        raise DomainError(f"{d.format('Omega')} does not divide {mod.g.format('Omega')}")
    return SubmoduleHandle(mod, d, mod.central_vector(d))


def _generators(sub: SubmoduleHandle, max_degree: int) -> list[ModuleVector]:
    """F^a H^b gen with a < n - deg d and a(d_f+1) + b <= max_degree."""
    mod = sub.parent
    w = mod.alg.d + 1
    out = []
    for a in range(sub.codimension_degree):
        if a * w > max_degree:
            break
        for b in range(max_degree - a * w + 1):
            out.append(mod.monomial_action(a, b, sub.generator))
    return out


def _span(sub: SubmoduleHandle, max_degree: int) -> Echelon:
    ech = Echelon()
    for v in _generators(sub, max_degree):
        ech.insert(v)
    return ech


def _max_degree(mod: WhittakerModule, vectors) -> int:
    degs = [mod.kazhdan_degree(v) for v in vectors if v]
    return max(degs, default=0)


def contains(sub: SubmoduleHandle, v: ModuleVector) -> bool:
    """Exact membership of v in sub, cross-checked at a wider window."""
    if not v:
        return True
    k = sub.parent.kazhdan_degree(v)
    first = _span(sub, k + BUFFER).contains(v)
    second = _span(sub, k + CHECK_BUFFER).contains(v)
    if first != second:
        raise InconsistencyError(f"membership of {v} in submodule({sub.divisor}) is window-dependent")
    return first


def is_submodule_of(inner: SubmoduleHandle, outer: SubmoduleHandle) -> bool:
    """inner is contained in outer (inner is cyclic, so test its generator)."""
    return contains(outer, inner.generator)


@dataclass(frozen=True)
class DivisorLattice:
    g: Poly
    factored: FactoredPoly
    divisors: tuple  # monic Polys
    submodules: tuple  # SubmoduleHandle, aligned with divisors

    def __len__(self) -> int:
        return len(self.divisors)

    @property
    def top(self) -> Poly:
        return Poly.const(1)

    @property
    def bottom(self) -> Poly:
        return self.g

    def leq(self, d1: Poly, d2: Poly) -> bool:
        """d1 below d2 in the lattice order (d2 divides d1, i.e. submodule(d1) in submodule(d2))."""
        return d2.divides(d1)

    def meet(self, d1: Poly, d2: Poly) -> Poly:
        """Divisor of the intersection of the two submodules: lcm."""
        return (d1 * d2 // poly_gcd(d1, d2)).monic()

    def join(self, d1: Poly, d2: Poly) -> Poly:
        """Divisor of the sum of the two submodules: gcd."""
        return poly_gcd(d1, d2)


def divisor_lattice(mod: WhittakerModule) -> DivisorLattice:
    _require_finite(mod)
    fp = mod.factored
    ranges = [range(fac.multiplicity + 1) for fac in fp.factors]
    divisors = []
    for exps in product(*ranges):
        d = Poly.const(1)
        for fac, e in zip(fp.factors, exps):
            d = d * fac.factor**e
        divisors.append(d)
    divisors.sort(key=lambda p: (p.degree, p.coeffs))
    subs = tuple(submodule(mod, d) for d in divisors)
    return DivisorLattice(mod.g, fp, tuple(divisors), subs)


def relative_annihilator(mod: WhittakerModule, vector: ModuleVector, sub: SubmoduleHandle) -> Poly:
    """Least-degree monic p with p(Omega) vector in sub.

    Omega^k vector is tested against sub + span(Omega^l vector, l < k) for
    k = 0, 1, ...; the first dependency gives p. Since g(Omega) kills V the
    search stops by k = n. Run at two window buffers that must agree.
    """
    powers = [vector]
    for _ in range(mod.n):
        powers.append(mod.act_element(mod.alg.casimir, powers[-1]))
    top = _max_degree(mod, powers)
    results = []
    for buffer in (BUFFER, CHECK_BUFFER):
        ech = _span(sub, top + buffer)
        found = None
        for k, vec in enumerate(powers):
            dep = ech.insert(vec, tag=k)
            if dep is not None:
                found = Poly([dep.get(t, Fraction(0)) for t in range(k + 1)]).monic()
                break
        results.append(found)
    if results[0] != results[1]:
        raise InconsistencyError("relative annihilator depends on the membership window")
    if results[0] is None:
        raise InconsistencyError("g(Omega) kills V, so some p of degree <= n must exist")
    return results[0]


def transporter_ideal(mod: WhittakerModule, sub: SubmoduleHandle) -> Poly:
    """Monic generator of {x in Z : x V in sub}; as V = R w, the least p with p(Omega) w in sub."""
    _require_finite(mod)
    if sub.parent is not mod:
        raise DomainError("submodule belongs to a different module")
    return relative_annihilator(mod, mod.w, sub)


def quotient_annihilator(upper: SubmoduleHandle, lower: SubmoduleHandle) -> Poly:
    """Generator of Z_(upper/lower): the least p with p(Omega) gen_upper in lower."""
    return relative_annihilator(upper.parent, upper.generator, lower)


def crt_decompose(mod: WhittakerModule) -> list[tuple[Poly, ModuleVector]]:
    """Idempotents e_i (mod g) and component generators e_i(Omega) w.

    Component i is annihilated by the i-th primary part q_i of g:
    e_i = (g/q_i) s_i with s_i (g/q_i) = 1 mod q_i.
    """
    _require_finite(mod)
    parts = mod.factored.primary_parts()
    if len(parts) < 2:
        raise DomainError("g is primary: the module is already indecomposable")
    out = []
    for q in parts:
        cof = mod.g // q
        one, s, _ = extended_gcd(cof, q)
        assert one == Poly.const(1)
        e = (cof * s) % mod.g
        out.append((e, mod.central_vector(e)))
    return out


@dataclass
class CompositionSeries:
    chain: list  # SubmoduleHandle, from V down to 0
    quotient_whittaker_dims: list
    steps: list  # irreducible factor p_k with d_(k+1) = d_k p_k
    certified: bool

    def quotient_annihilators(self) -> list[Poly]:
        return [quotient_annihilator(a, b) for a, b in zip(self.chain, self.chain[1:])]

    def __len__(self) -> int:
        return len(self.chain) - 1


def quotient_whittaker_dimension(upper: SubmoduleHandle, lower: SubmoduleHandle, J: int = 4) -> int:
    """dim of Whittaker vectors of upper/lower among classes of F^a H^b gen_upper, b <= J.

    Solves (E - eta(E)) v in lower for v in the window of upper, then counts
    the solutions modulo lower. Computed at two buffers; they must agree.
    """
    mod = upper.parent
    e = mod.eta.eta_e
    cands = [
        mod.monomial_action(a, b, upper.generator)
        for a in range(upper.codimension_degree)
        for b in range(J + 1)
    ]
    images = [mod.act_generator("E", c) - c.scale(e) for c in cands]
    top = _max_degree(mod, cands + images)
    counts = []
    for buffer in (BUFFER, CHECK_BUFFER):
        lower_gens = _generators(lower, top + buffer)
        ech = Echelon()
        for gvec in lower_gens:
            ech.insert(gvec)
        sols = []
        for k, img in enumerate(images):
            dep = ech.insert(img, tag=k)
            if dep is not None:
                vec = ModuleVector()
                for t, c in dep.items():
                    vec = vec + cands[t].scale(c)
                sols.append(vec)
        modulo = Echelon()
        for gvec in lower_gens:
            modulo.insert(gvec)
        base = modulo.rank
        for s in sols:
            modulo.insert(s)
        counts.append(modulo.rank - base)
    if counts[0] != counts[1]:
        raise InconsistencyError("quotient Whittaker dimension depends on the window")
    return counts[0]


def _chain_divisors(fp: FactoredPoly) -> tuple[list[Poly], list[Poly]]:
    divisors, steps = [Poly.const(1)], []
    for fac in fp.factors:
        for _ in range(fac.multiplicity):
            steps.append(fac.factor)
            divisors.append(divisors[-1] * fac.factor)
    return divisors, steps


def composition_series(mod: WhittakerModule, J: int = 4) -> CompositionSeries:
    """V = V_0 > V_1 > ... > 0 with V_k = R d_k(Omega) w.

    The divisors d_k run through the primary parts in CRT order, which is
    the concatenation of the series of the direct summands. Each quotient
    is annihilated by one irreducible factor and is certified irreducible
    by a quotient Whittaker-vector count of 1; series through uncertified
    or nonlinear factors are returned with ``certified=False``.
    """
    _require_finite(mod)
    fp = mod.factored
    if len(fp.factors) > 1:
        crt_decompose(mod)  # validates the splitting; chain below concatenates it
    divisors, steps = _chain_divisors(fp)
    chain = [submodule(mod, d) for d in divisors]
    dims = [quotient_whittaker_dimension(chain[k], chain[k + 1], J) for k in range(len(steps))]
    certified = all(p.degree == 1 for p in steps)
    if certified and any(dm != 1 for dm in dims):
        raise InconsistencyError(f"composition factor with Whittaker dimension {dims}")
    return CompositionSeries(chain, dims, steps, certified)


def unique_maximal_submodule(mod: WhittakerModule, J: int = 4) -> SubmoduleHandle:
    """R p(Omega) w for primary g = p^n, checked maximal."""
    _require_finite(mod)
    fp = mod.factored
    if len(fp.factors) != 1:
        raise DomainError("g is not primary: there is no unique maximal submodule")
    p = fp.factors[0].factor
    sub = submodule(mod, p)
    whole = submodule(mod, Poly.const(1))
    if transporter_ideal(mod, sub) != p:
        raise InconsistencyError("transporter ideal of R p(Omega) w differs from (p)")
    if fp.factors[0].certified_irreducible and p.degree == 1:
        if quotient_whittaker_dimension(whole, sub, J) != 1:
            raise InconsistencyError("V / R p(Omega) w is not irreducible")
    return sub


@dataclass
class IrreducibilityCertificate:
    verdict: object  # True, False, or the string FLAGGED
    evidence: dict


FLAGGED = "irreducible over Q - classification applies after base change"


def certify_irreducible(mod: WhittakerModule, J: int | None = None) -> IrreducibilityCertificate:
    """Irreducibility by two criteria: Z_V maximal, and one-dimensional Whittaker vectors."""
    if J is None:
        J = default_truncation(mod)
    if mod.is_universal:
        return IrreducibilityCertificate(False, {"reason": "g = 0: Omega w generates a proper submodule"})
    fp = mod.factored
    dim = len(whittaker_vector_solve(mod, J))
    total = sum(f.multiplicity for f in fp.factors)
    evidence = {"deg_g": mod.n, "whittaker_dim": dim, "J": J, "factor_count": total}
    if total == 1 and fp.factors[0].factor.degree > 1:
        return IrreducibilityCertificate(FLAGGED, evidence)
    maximal = mod.n == 1
    one_dim = dim == 1
    if maximal != one_dim:
        raise InconsistencyError(f"Z_V maximal={maximal} but Whittaker dimension {dim}")
    return IrreducibilityCertificate(maximal, evidence)
