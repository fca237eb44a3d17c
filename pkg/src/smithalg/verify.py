"""Catalog-driven verification of the algebraic properties.

A catalog is a list of scenarios (f, eta(E), factored g, J, expected
flags). ``verify_all`` runs every property suite on every scenario with a
seeded RNG and returns a report; the CLI maps any failure to exit status 2.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .center import (
    WhittakerCharacter,
    eta_projection,
    freeness_basis_matrix,
    omega_eta_power,
)
from .errors import DomainError
from .exactpoly import Poly, format_rational
from .linalg import Echelon, same_span
from .modules import (
    ModuleVector,
    WhittakerModule,
    central_annihilator,
    default_truncation,
    whittaker_vector_solve,
)
from .parsing import parse_poly
from .pbw import E, F, H, PBWElement, SmithAlgebra
from .structure import (
    certify_irreducible,
    composition_series,
    crt_decompose,
    divisor_lattice,
    is_submodule_of,
    transporter_ideal,
)

__all__ = [
    "Scenario",
    "default_catalog",
    "load_catalog",
    "validate_scenario",
    "random_pbw",
    "random_module_vector",
    "ideal_membership",
    "annihilator_samples",
    "verify_all",
]

CATALOG_F = ["0", "1", "2*H", "H^2", "H^3 - 1"]
CATALOG_ETA = ["1", "2", "-3/2"]
CATALOG_ROOTS = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(5, 2)]


@dataclass
class Scenario:
    f: str
    etaE: str
    g: list  # [[factor text in Omega, multiplicity], ...]
    J: int | None = None
    expected: dict = field(default_factory=dict)
    u: str | None = None  # override, only for mutation testing

    def to_json(self) -> dict:
        out = {"f": self.f, "etaE": self.etaE, "g": self.g, "J": self.J, "expected": self.expected}
        if self.u is not None:
            out["u"] = self.u
        return out

    @classmethod
    def from_json(cls, data: dict) -> Scenario:
        unknown = set(data) - {"f", "etaE", "g", "J", "expected", "u"}
        if unknown:
            raise DomainError(f"unknown scenario fields: {sorted(unknown)}")
        for key in ("f", "etaE", "g"):
            if key not in data:
                raise DomainError(f"scenario missing field {key!r}")
        return cls(str(data["f"]), str(data["etaE"]), [list(p) for p in data["g"]],
                   data.get("J"), dict(data.get("expected") or {}), data.get("u"))

    def build(self) -> tuple[SmithAlgebra, WhittakerCharacter, Poly]:
        f = parse_poly(self.f, "H")
        u = parse_poly(self.u, "H") if self.u is not None else None
        alg = SmithAlgebra(f, u)
        eta = WhittakerCharacter(Fraction(self.etaE))
        g = Poly.const(1)
        for text, mult in self.g:
            g = g * parse_poly(text, "Omega") ** int(mult)
        return alg, eta, g

    @property
    def label(self) -> str:
        g = "*".join(f"({t})^{m}" if m != 1 else f"({t})" for t, m in self.g)
        return f"f={self.f}; eta(E)={self.etaE}; g={g}"


def _omega_minus(a: Fraction) -> str:
    if a == 0:
        return "Omega"
    sign = "-" if a > 0 else "+"
    return f"Omega {sign} {format_rational(abs(a))}"


def default_catalog() -> list[Scenario]:
    """Every (f, eta) pair with a linear, a split square-free and a primary square g."""
    out = []
    k = 0
    for f in CATALOG_F:
        for eta in CATALOG_ETA:
            a = CATALOG_ROOTS[k % 5]
            b = CATALOG_ROOTS[(k + 2) % 5]
            out.append(Scenario(f, eta, [[_omega_minus(a), 1]], expected={"irreducible": True, "whittaker_dim": 1}))
            out.append(Scenario(f, eta, [[_omega_minus(a), 1], [_omega_minus(b), 1]],
                                expected={"irreducible": False, "whittaker_dim": 2}))
            out.append(Scenario(f, eta, [[_omega_minus(b), 2]], expected={"irreducible": False, "whittaker_dim": 2}))
            k += 1
    return out


def load_catalog(source: str) -> list[Scenario]:
    """``default`` or a path to a JSON array of scenario records."""
    if source == "default":
        return default_catalog()
    with open(source) as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise DomainError("catalog must be a JSON array of scenarios")
    return [Scenario.from_json(d) for d in data]


def validate_scenario(sc: Scenario) -> None:
    """Raises DomainError for malformed scenarios (singular eta, bad g)."""
    if Fraction(sc.etaE) == 0:
        raise DomainError(f"scenario {sc.label}: eta(E) = 0 is singular")
    if not sc.g:
        raise DomainError(f"scenario {sc.label}: g must have at least one factor")
    for text, mult in sc.g:
        p = parse_poly(text, "Omega")
        if p.degree is None or p.degree < 1 or int(mult) < 1:
            raise DomainError(f"scenario {sc.label}: bad factor {text!r}^{mult}")
    sc.build()


# -- random generators ----------------------------------------------------------


def _rand_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-5, 5), rng.choice([1, 1, 1, 2, 3]))


def random_pbw(rng: random.Random, alg: SmithAlgebra, max_degree: int, n_terms: int = 4,
               e_free: bool = False) -> PBWElement:
    """Random element whose monomials have Kazhdan degree <= max_degree."""
    w = alg.d + 1
    terms = {}
    for _ in range(n_terms):
        a = rng.randint(0, max_degree // w)
        c = 0 if e_free else rng.randint(0, (max_degree - a * w) // w)
        b = rng.randint(0, max_degree - (a + c) * w)
        terms[(a, b, c)] = terms.get((a, b, c), 0) + _rand_rational(rng)
    return PBWElement(terms)


def random_module_vector(rng: random.Random, mod: WhittakerModule, J: int = 4, n_terms: int = 3) -> ModuleVector:
    top = mod.n if mod.n is not None else 3
    terms = {}
    for _ in range(n_terms):
        key = (rng.randrange(top), rng.randint(0, J))
        terms[key] = terms.get(key, 0) + _rand_rational(rng)
    return ModuleVector(terms)


# -- annihilator theorem: independent membership ---------------------------------


def ideal_membership(mod: WhittakerModule, x: PBWElement) -> bool:
    """Is x in R g(Omega) + R ker(eta)?  Decided inside R(F,H).

    Modulo R ker(eta) the question is whether x^eta lies in the left
    R(F,H)-span of g(Omega^eta). Multipliers F^i H^j with
    i(d+1) + j <= deg(x) - n(d+1) suffice because the associated graded of
    R(F,H) is a polynomial domain and g(Omega^eta) has nonzero symbol.
    """
    alg = mod.alg
    xe = eta_projection(alg, mod.eta, x)
    if not xe:
        return True
    if mod.is_universal:
        return False
    w = alg.d + 1
    budget = alg.kazhdan_degree(xe) - mod.n * w
    if budget < 0:
        return False
    ech = Echelon()
    rule = mod.reduction_rule
    for i in range(budget // w + 1):
        for j in range(budget - i * w + 1):
            ech.insert(alg.mul(PBWElement.monomial(i, j, 0), rule))
    return ech.contains(xe)


def annihilator_samples(rng: random.Random, mod: WhittakerModule, count: int, max_degree: int | None = None):
    """Random x, about half built inside R g(Omega) + R ker(eta)."""
    alg = mod.alg
    w = alg.d + 1
    if max_degree is None:
        max_degree = 2 * w + 2
    g_elem = alg.poly_in_casimir(mod.g) if not mod.is_universal else PBWElement()
    e_minus = E - PBWElement.scalar(mod.eta.eta_e)
    out = []
    for k in range(count):
        mode = k % 4
        if mode == 0:
            x = random_pbw(rng, alg, max_degree)
        elif mode == 1:
            x = alg.mul(random_pbw(rng, alg, w, 2), g_elem) + alg.mul(random_pbw(rng, alg, max_degree, 2), e_minus)
        elif mode == 2:
            x = alg.mul(random_pbw(rng, alg, max_degree, 3), e_minus)
        else:
            x = (alg.mul(random_pbw(rng, alg, w, 2), g_elem)
                 + PBWElement.monomial(rng.randint(0, 1), rng.randint(0, 2), 0, _rand_rational(rng) or 1))
        out.append(x)
    return out


# -- suites ----------------------------------------------------------------------------


@dataclass
class CheckResult:
    scenario: int
    tag: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"scenario": self.scenario, "tag": self.tag, "passed": self.passed, "detail": self.detail}


def _suite_casimir(alg, eta, mod, rng, sc):
    for name, gen in (("E", E), ("F", F), ("H", H)):
        com = alg.commutator(alg.casimir, gen)
        if com:
            return False, f"[Omega, {name}] = {com}"
    return True, ""


def _suite_antiderivative(alg, eta, mod, rng, sc):
    diff = alg.u.shift(1) - alg.u - alg.f * 2
    if diff or alg.u(0) != 0:
        return False, f"u(H+1) - u(H) - 2f = {diff.format('H')}, u(0) = {alg.u(0)}"
    return True, ""


def _suite_relations(alg, eta, mod, rng, sc):
    checks = [
        ("[E,F] = f(H)", alg.commutator(E, F), PBWElement.from_h_poly(alg.f)),
        ("[H,E] = E", alg.commutator(H, E), E),
        ("[H,F] = -F", alg.commutator(H, F), -F),
    ]
    for name, got, want in checks:
        if got != want:
            return False, f"{name}: got {got}"
    return True, ""


def _suite_projection(alg, eta, mod, rng, sc, top=4):
    powers = [omega_eta_power(alg, eta, q) for q in range(top + 1)]
    for p in range(top + 1):
        for q in range(top + 1 - p):
            lhs = eta_projection(alg, eta, alg.casimir_power(p + q))
            if lhs != alg.mul(powers[p], powers[q]):
                return False, f"(Omega^{p + q})^eta != (Omega^eta)^{p} (Omega^eta)^{q}"
    return True, ""


def _suite_freeness(alg, eta, mod, rng, sc):
    for k in range(3 * (alg.d + 1) + 7):
        rep = freeness_basis_matrix(alg, eta, k)
        if not rep.full_rank:
            return False, f"k={k}: {len(rep.row_labels)}x{len(rep.col_labels)} rank {rep.rank}"
    return True, ""


def _suite_module_relations(alg, eta, mod, rng, sc):
    fH = PBWElement.from_h_poly(alg.f)
    for _ in range(5):
        v = random_module_vector(rng, mod)
        act = mod.act_generator
        ef = act("E", act("F", v)) - act("F", act("E", v))
        if ef != mod.act_element(fH, v):
            return False, f"(EF - FE) v != f(H) v for v = {v}"
        if act("H", act("E", v)) - act("E", act("H", v)) != act("E", v):
            return False, f"(HE - EH) v != E v for v = {v}"
        if act("H", act("F", v)) - act("F", act("H", v)) != -act("F", v):
            return False, f"(HF - FH) v != -F v for v = {v}"
        om = alg.casimir
        for gen in "EFH":
            if mod.act_element(om, act(gen, v)) != act(gen, mod.act_element(om, v)):
                return False, f"Omega does not commute with {gen} on v = {v}"
    return True, ""


def _suite_annihilator(alg, eta, mod, rng, sc, count=12):
    inside = 0
    for x in annihilator_samples(rng, mod, count):
        kills = not mod.act_element(x, mod.w)
        member = ideal_membership(mod, x)
        inside += member
        if kills != member:
            return False, f"x = {x}: x w = 0 is {kills} but ideal membership is {member}"
    return True, f"{inside}/{count} samples in the ideal"


def _suite_whittaker(alg, eta, mod, rng, sc):
    J = sc.J if sc.J is not None else default_truncation(mod)
    sols = whittaker_vector_solve(mod, J)
    for v in sols:
        if not mod.is_whittaker_vector(v):
            return False, f"{v} is not a Whittaker vector"
    expected = [mod.omega_power_vector(k) for k in range(mod.n)]
    if J >= mod.n * ((alg.u.degree or 0) + 1) and not same_span(sols, expected):
        return False, f"solution space of dim {len(sols)} differs from span(Omega^k w, k < {mod.n})"
    if central_annihilator(mod) != mod.g:
        return False, f"central annihilator {central_annihilator(mod).format('Omega')}"
    return True, f"dim {len(sols)}"


def _suite_structure(alg, eta, mod, rng, sc):
    lat = divisor_lattice(mod)
    size = 1
    for fac in mod.factored.factors:
        size *= fac.multiplicity + 1
    if len(lat) != size:
        return False, f"lattice size {len(lat)} != {size}"
    for sub in lat.submodules:
        t = transporter_ideal(mod, sub)
        if t != sub.divisor:
            return False, f"transporter(submodule({sub.divisor.format('Omega')})) = {t.format('Omega')}"
    for s1 in lat.submodules:
        for s2 in lat.submodules:
            if s1.divisor.divides(s2.divisor) != is_submodule_of(s2, s1):
                return False, f"order reversal fails for {s1.divisor}, {s2.divisor}"
    if len(mod.factored.factors) > 1:
        comps = crt_decompose(mod)
        total = ModuleVector()
        for e, gen in comps:
            total = total + gen
        if total != mod.w:
            return False, "sum of idempotents does not act as identity on w"
        for (e, gen), part in zip(comps, mod.factored.primary_parts()):
            if central_annihilator(mod, gen) != part:
                return False, f"component annihilator differs from {part.format('Omega')}"
    series = composition_series(mod)
    length = sum(f.multiplicity * f.factor.degree for f in mod.factored.factors)
    if len(series) != length:
        return False, f"composition length {len(series)} != {length}"
    if series.certified and any(d != 1 for d in series.quotient_whittaker_dims):
        return False, f"quotient Whittaker dims {series.quotient_whittaker_dims}"
    return True, f"lattice {len(lat)}, length {len(series)}"


def _suite_expected(alg, eta, mod, rng, sc):
    exp = sc.expected
    if not exp:
        return True, "no expectations"
    cert = certify_irreducible(mod, sc.J)
    if "irreducible" in exp and cert.verdict != exp["irreducible"]:
        return False, f"irreducible verdict {cert.verdict!r}, expected {exp['irreducible']!r}"
    if "whittaker_dim" in exp and cert.evidence.get("whittaker_dim") != exp["whittaker_dim"]:
        return False, f"Whittaker dimension {cert.evidence.get('whittaker_dim')}, expected {exp['whittaker_dim']}"
    return True, ""


SUITES: list[tuple[str, Callable]] = [
    ("casimir-centrality", _suite_casimir),
    ("antiderivative", _suite_antiderivative),
    ("defining-relations", _suite_relations),
    ("projection-homomorphism", _suite_projection),
    ("freeness", _suite_freeness),
    ("module-relations", _suite_module_relations),
    ("annihilator-theorem", _suite_annihilator),
    ("whittaker-vectors", _suite_whittaker),
    ("submodule-structure", _suite_structure),
    ("expected-flags", _suite_expected),
]

# suites depending only on (f, eta) run once per pair
_ALGEBRA_SUITES = {"casimir-centrality", "antiderivative", "defining-relations", "projection-homomorphism", "freeness"}


def verify_all(catalog: list[Scenario], seed: int = 0) -> dict:
    """Run every suite on every scenario; deterministic in ``seed``."""
    for sc in catalog:
        validate_scenario(sc)
    results: list[CheckResult] = []
    seen: set = set()
    for idx, sc in enumerate(catalog):
        alg, eta, g = sc.build()
        mod = WhittakerModule(alg, eta, g)
        rng = random.Random(f"{seed}:{idx}")
        pair = (sc.f, sc.u, sc.etaE)
        for tag, suite in SUITES:
            if tag in _ALGEBRA_SUITES:
                if (pair, tag) in seen:
                    continue
                seen.add((pair, tag))
            try:
                ok, detail = suite(alg, eta, mod, rng, sc)
            except Exception as exc:  # reported as a failure of this suite
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(idx, tag, ok, detail))
    failed = [r for r in results if not r.passed]
    return {
        "seed": seed,
        "scenarios": [sc.to_json() for sc in catalog],
        "results": [r.to_json() for r in results],
        "passed": not failed,
        "failures": len(failed),
    }
