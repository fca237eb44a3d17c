import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smithalg.center import WhittakerCharacter, eta_projection, omega_eta_power
from smithalg.errors import DomainError
from smithalg.exactpoly import Poly
from smithalg.linalg import same_span
from smithalg.modules import (
    ModuleVector,
    VermaModule,
    VermaVector,
    WhittakerModule,
    central_annihilator,
    default_truncation,
    isomorphism_test,
    whittaker_vector_solve,
)
from smithalg.parsing import parse_poly
from smithalg.pbw import E, F, H, ONE, PBWElement
from smithalg.verify import annihilator_samples, ideal_membership, random_module_vector, random_pbw

from conftest import CATALOG_ETA, CATALOG_F, CATALOG_ROOTS, algebra, omega_minus
from oracles import eval_poly


def om(text):
    return parse_poly(text, "Omega")


def module(f_text, eta_e, g_text):
    return WhittakerModule(algebra(f_text), WhittakerCharacter(eta_e), om(g_text) if isinstance(g_text, str) else g_text)


G_SHAPES = ["Omega - 1", "(Omega - 1)*(Omega + 1)", "(Omega - 5/2)^2", "0"]


def test_build_examples():
    mod = module("2*H", 1, "Omega")
    assert mod.act_generator("F", mod.w) == ModuleVector({(0, 2): -1, (0, 1): -1})
    mod = module("H^3 - 1", Fraction(-3, 2), "Omega - 2")
    expect = PBWElement.from_h_poly(mod.alg.u.shift(1) - Poly.const(2)) + F.scale(-3)
    assert mod.reduction_rule == expect


def test_build_rejects_non_monic():
    with pytest.raises(DomainError):
        module("1", 1, "2*Omega - 1")
    with pytest.raises(DomainError):
        module("1", 0, "Omega - 1")


def test_universal_module_has_no_reduction():
    mod = module("H^2", 2, "0")
    assert mod.is_universal and mod.n is None
    v = mod.w
    for _ in range(5):
        v = mod.act_generator("F", v)
    assert v == ModuleVector({(5, 0): 1})
    assert len(mod.basis_window(3)) == 16


def test_generator_examples():
    mod = module("H^2", Fraction(-3, 2), "Omega - 5/2")
    u1 = mod.alg.u.shift(1)
    for j in range(6):
        hj = ModuleVector({(0, j): 1})
        assert mod.act_generator("H", hj) == ModuleVector({(0, j + 1): 1})
        assert mod.act_generator("E", hj) == ModuleVector.from_grouped({0: Poly((-1, 1)) ** j * Fraction(-3, 2)})
        expect = Poly((1, 1)) ** j * (Poly.const(Fraction(5, 2)) - u1) * Fraction(-1, 3)
        assert mod.act_generator("F", hj) == ModuleVector.from_grouped({0: expect})


def test_act_element_examples():
    for f_text in CATALOG_F:
        mod = module(f_text, 2, "Omega + 1")
        assert mod.act_element(ONE, mod.w) == mod.w
        assert mod.act_element(mod.alg.casimir, mod.w) == mod.w.scale(-1)
        efmfe = mod.alg.commutator(E, F)
        assert mod.act_element(efmfe, mod.w) == mod.act_element(mod.alg.h_element(mod.alg.f), mod.w)


@pytest.mark.parametrize("f_text", CATALOG_F)
@pytest.mark.parametrize("g_text", G_SHAPES)
def test_defining_relations_act(f_text, g_text):
    mod = module(f_text, Fraction(-3, 2), g_text)
    rng = random.Random(f"{f_text}|{g_text}")
    act = mod.act_generator
    for _ in range(4):
        v = random_module_vector(rng, mod, J=4)
        assert act("E", act("F", v)) - act("F", act("E", v)) == mod.act_element(mod.alg.h_element(mod.alg.f), v)
        assert act("H", act("E", v)) - act("E", act("H", v)) == act("E", v)
        assert act("H", act("F", v)) - act("F", act("H", v)) == -act("F", v)
        for gen in "EFH":
            omega = mod.alg.casimir
            assert mod.act_element(omega, act(gen, v)) == act(gen, mod.act_element(omega, v))


@pytest.mark.parametrize("f_text", CATALOG_F)
@pytest.mark.parametrize("g_text", G_SHAPES)
def test_two_action_routes_agree(f_text, g_text):
    mod = module(f_text, 2, g_text)
    rng = random.Random(f"route|{f_text}|{g_text}")
    for _ in range(6):
        x = random_pbw(rng, mod.alg, 2 * (mod.alg.d + 1) + 1)
        v = random_module_vector(rng, mod, J=3)
        assert mod.act_element(x, v) == mod.act_via_projection(x, v)


@pytest.mark.parametrize("f_text", CATALOG_F)
def test_e_table_matches_rewriting(f_text):
    mod = module(f_text, Fraction(-3, 2), "0")
    alg, eta = mod.alg, mod.eta
    for i in range(5):
        for j in range(4):
            direct = eta_projection(alg, eta, alg.mul(E, PBWElement.monomial(i, j, 0)))
            assert mod.act_generator("E", ModuleVector({(i, j): 1})) == ModuleVector(
                {(a, b): c for (a, b, _), c in direct.items()}
            )


@pytest.mark.parametrize("f_text", CATALOG_F)
@pytest.mark.parametrize("eta_e", CATALOG_ETA, ids=str)
def test_annihilator_theorem(f_text, eta_e):
    for g in (omega_minus(1), om("(Omega - 2)*(Omega + 1)"), om("(Omega - 5/2)^2")):
        mod = WhittakerModule(algebra(f_text), WhittakerCharacter(eta_e), g)
        rng = random.Random(f"ann|{f_text}|{eta_e}|{g}")
        for x in annihilator_samples(rng, mod, 12):
            assert (not mod.act_element(x, mod.w)) == ideal_membership(mod, x)


def test_membership_oracle_examples():
    mod = module("2*H", 1, "(Omega - 1)^2")
    alg = mod.alg
    g_elem = alg.poly_in_casimir(mod.g)
    assert ideal_membership(mod, alg.mul(F, g_elem))
    assert ideal_membership(mod, alg.mul(H, E - ONE))
    assert not ideal_membership(mod, alg.casimir - ONE)
    assert not ideal_membership(mod, ONE)


@pytest.mark.parametrize("f_text", CATALOG_F)
@pytest.mark.parametrize("g_text", ["Omega - 2", "(Omega - 1)*(Omega - 5/2)", "(Omega + 1)^2", "(Omega-1)^2*Omega"])
def test_whittaker_vectors_are_center_orbit(f_text, g_text):
    mod = module(f_text, Fraction(-3, 2), g_text)
    got = whittaker_vector_solve(mod)
    orbit = [mod.omega_power_vector(k) for k in range(mod.n)]
    assert len(got) == mod.n
    assert same_span([dict(v) for v in got], [dict(v) for v in orbit])
    for v in got:
        assert mod.is_whittaker_vector(v)


def test_whittaker_square_example():
    mod = module("2*H", 1, "(Omega - 1)^2")
    got = whittaker_vector_solve(mod, 6)
    assert [str(v) for v in got] == ["(1)*w", "(H + H^2 + F)*w"]
    v = mod.reduce_element(omega_eta_power(mod.alg, mod.eta, 1) - ONE)
    assert same_span([dict(x) for x in got], [dict(mod.w), dict(v)])


def test_default_truncation():
    mod = module("H^3 - 1", 1, "(Omega - 1)^2")
    assert default_truncation(mod) == 2 * 5 + 8


@pytest.mark.parametrize("f_text", CATALOG_F)
def test_central_annihilator_examples(f_text):
    assert central_annihilator(module(f_text, 2, "(Omega - 1)*(Omega - 2)")) == om("(Omega - 1)*(Omega - 2)")
    assert central_annihilator(module(f_text, 2, "Omega - 5/2")) == om("Omega - 5/2")
    alg = algebra(f_text)
    lam = Fraction(3, 4)
    assert central_annihilator(VermaModule(alg, lam)) == Poly((-alg.u(lam + 1), 1))


def test_central_annihilator_bound():
    mod = module("1", 1, "(Omega - 1)^3")
    assert central_annihilator(mod, maxdeg=2) == Poly()
    assert central_annihilator(mod) == om("(Omega-1)^3")


def test_verma_examples():
    alg = algebra("2*H")
    ver = VermaModule(alg, 1)
    assert not ver.act_generator("E", ver.v)
    assert ver.act_generator("E", ver.basis_vector(1)) == ver.v.scale(2)
    for k in range(11):
        b = ver.basis_vector(k)
        assert ver.act_element(alg.casimir, b) == b.scale(4)


@pytest.mark.parametrize("f_text", CATALOG_F)
def test_verma_closed_forms(f_text):
    alg = algebra(f_text)
    for lam in (Fraction(0), Fraction(-2, 3), Fraction(7, 2)):
        ver = VermaModule(alg, lam)
        for k in range(7):
            b = ver.basis_vector(k)
            assert ver.act_generator("F", b) == VermaVector({k + 1: 1})
            assert ver.act_generator("H", b) == b.scale(lam - k)
            # E F^k v = sum_{m<k} f(lambda - m) F^(k-1) v
            s = sum((eval_poly(alg.f.coeffs, lam - m) for m in range(k)), Fraction(0))
            assert ver.act_generator("E", b) == VermaVector({k - 1: s} if k else {})


def test_isomorphism_examples():
    a = module("H^2", 2, "Omega - 3")
    b = WhittakerModule(algebra("H^2"), WhittakerCharacter(2), Poly.from_roots([3]))
    assert isomorphism_test(a, b) is True
    assert isomorphism_test(module("H^2", 2, "Omega - 1"), module("H^2", 2, "Omega - 2")) is False
    sq = module("H^2", 2, "(Omega - 1)^2")
    assert isomorphism_test(sq, sq) is None
    with pytest.raises(DomainError):
        isomorphism_test(module("H^2", 2, "Omega"), module("H^2", 1, "Omega"))


def test_vector_text_and_json():
    v = ModuleVector({(0, 0): 1, (1, 2): Fraction(-1, 2)})
    assert ModuleVector.from_json(v.to_json()) == v
    assert str(ModuleVector({(0, 0): 1})) == "(1)*w"


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CATALOG_F), st.sampled_from(CATALOG_ROOTS), st.integers(0, 2 ** 31))
def test_linear_in_vector(f_text, a, seed):
    mod = WhittakerModule(algebra(f_text), WhittakerCharacter(2), omega_minus(a) * omega_minus(a + 1))
    rng = random.Random(seed)
    x = random_pbw(rng, mod.alg, 4)
    v1, v2 = random_module_vector(rng, mod), random_module_vector(rng, mod)
    assert mod.act_element(x, v1 + v2.scale(3)) == mod.act_element(x, v1) + mod.act_element(x, v2).scale(3)
    for (i, _) in mod.act_element(x, v1):
        assert i < mod.n
