import itertools
import random

import pytest

from conftest import make_field, random_poly
from test_valuations import blowup_target
from valfrob.errors import BasisError, NotMonomializedError, OutsideValuationRingError, ValuationError
from valfrob.frobsplit import (
    claim_suite,
    eta_split,
    extend_split,
    inf_eq_sides,
    monomial_basis,
    p_decompose,
    verify_claim,
    verify_free_basis,
    verify_inf_eq,
)
from valfrob.gf import field
from valfrob.poly import Polynomial, RationalFunction
from valfrob.valuations import GaussValuation, lex_valuation


def test_p_decompose_examples():
    K = make_field(2, ["x"])
    D = p_decompose(K.parse("x^3 + x^2").as_polynomial())
    assert {b: c.terms for b, c in D.coeffs.items()} == {(1,): {(1,): 1}, (0,): {(1,): 1}}
    D = p_decompose(K.parse("x^2").as_polynomial())
    assert {b: c.terms for b, c in D.coeffs.items()} == {(0,): {(1,): 1}}
    D = p_decompose(K.parse("1").as_polynomial())
    assert {b: c.terms for b, c in D.coeffs.items()} == {(0,): {(0,): 1}}


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_recomposition(p, k):
    F = field(p, k)
    rng = random.Random(p * 10 + k)
    for e in (1, 2):
        for _ in range(100):
            f = random_poly(rng, F, 3, 9)
            D = p_decompose(f, e)
            assert D.recompose() == f
            assert all(all(b < p**e for b in beta) for beta in D.coeffs)


def test_eta_examples():
    nu = lex_valuation(2, 2)
    K = nu.field
    assert eta_split(K.parse("x1"), nu).is_zero()
    assert eta_split(K.parse("x1^3"), nu).is_zero()
    assert eta_split(K.parse("1"), nu) == K.one()
    nu1 = lex_valuation(2, 1, names=("x",))
    assert eta_split(nu1.field.parse("x^2 + x^3"), nu1) == nu1.field.parse("x^2")


def test_extend_examples():
    nu = lex_valuation(2, 2)
    K = nu.field
    assert extend_split(K.parse("x1/x2"), nu).is_zero()
    assert extend_split(K.parse("x1^2/x2^2"), nu) == K.parse("x1^2/x2^2")
    assert extend_split(K.one(), nu) == K.one()


def test_extend_refuses_outside_ring():
    nu = lex_valuation(3, 2)
    with pytest.raises(OutsideValuationRingError):
        extend_split(nu.field.parse("x2/x1"), nu)


def test_eta_refuses_fractions_and_non_monomialized():
    nu = lex_valuation(3, 2)
    with pytest.raises(ValuationError):
        eta_split(nu.field.parse("x1/x2"), nu)
    from test_valuations import blowup_original

    with pytest.raises(NotMonomializedError):
        extend_split(blowup_original().field.parse("x"), blowup_original())


def _brute_phi(r, nu, q):
    # oracle: expand a * b^(q-1) in full, keep q-divisible exponents, divide by b^q
    a, b = r.num, r.den
    full = a * b ** (q - 1)
    kept = Polynomial(full.F, full.n, {e: c for e, c in full.terms.items() if all(x % q == 0 for x in e)})
    return RationalFunction(nu.field, kept, b**q) if not kept.is_zero() else nu.field.zero()


@pytest.mark.parametrize("p", [2, 3])
def test_extension_matches_direct_formula(p):
    nu = lex_valuation(p, 2)
    rng = random.Random(p)
    for _ in range(100):
        r = nu.random_ring_element(rng, degree=3)
        assert extend_split(r, nu) == _brute_phi(r, nu, p)


def test_higher_iterate():
    nu = lex_valuation(2, 2)
    K = nu.field
    assert eta_split(K.parse("x1^4 + x1^2"), nu, e=2) == K.parse("x1^4")
    rng = random.Random(1)
    for _ in range(50):
        r = nu.random_ring_element(rng, degree=4)
        assert extend_split(r, nu, e=2) == _brute_phi(r, nu, 4)


def test_inf_equation_examples():
    nu = lex_valuation(2, 2)
    K = nu.field
    assert verify_inf_eq(K.parse("x1 + x2^2"), nu)
    left, right = inf_eq_sides(K.parse("x1 + x2^2").as_polynomial(), nu)
    assert left == right == nu.group.element([0, 2])
    assert verify_inf_eq(K.parse("x1^3*x2"), nu)
    T = blowup_target()
    assert verify_inf_eq(T.field.parse("x + u*x"), T)
    assert inf_eq_sides(T.field.parse("x + u*x").as_polynomial(), T)[0] == T.group.element([1, 0])


def test_claim_examples():
    nu = lex_valuation(2, 2)
    K = nu.field
    assert verify_claim(K.parse("x1"), nu)
    assert verify_claim(K.parse("x1^2"), nu)
    assert verify_claim(K.parse("x1^2 + x2"), nu)


@pytest.mark.parametrize("p", [2, 3])
def test_displayed_rule_on_monomials(p):
    nu = lex_valuation(p, 2)
    K = nu.field
    for a, b in itertools.product(range(2 * p + 1), repeat=2):
        m = K.parse(f"x1^{a}*x2^{b}")
        expect = m if a % p == 0 and b % p == 0 else K.zero()
        assert eta_split(m, nu) == expect
        assert extend_split(m, nu) == expect


def test_claim_suite_lex_and_blowup():
    for nu in (lex_valuation(3, 2), blowup_target(2)):
        w = claim_suite(nu, samples=100, seed=1)
        assert w.passed, w.log
        assert {e["property"] for e in w.log} >= {"recomposition", "inf-equation", "extend(1) = 1"}
        assert w.to_json()["passed"] is True


def test_free_basis_gauss():
    w = GaussValuation(3)
    K = w.field
    basis = monomial_basis(K)
    assert [b.render() for b in basis] == ["1", "x", "x^2"]
    ok, certs = verify_free_basis([K.one()], basis, w)
    assert ok and certs[0].coefficients == {"0": "1"}
    ok, certs = verify_free_basis([K.parse("x^4")], basis, w)
    assert ok and certs[0].coefficients == {"1": "x"}
    rng = random.Random(0)
    sample = [w.random_ring_element(rng) for _ in range(50)]
    assert verify_free_basis(sample, basis, w)[0]


def test_free_basis_fails_for_z_first():
    w = GaussValuation(3, "z_first")
    rng = random.Random(0)
    sample = [w.random_ring_element(rng) for _ in range(50)]
    ok, certs = verify_free_basis(sample, monomial_basis(w.field), w)
    assert not ok
    # x/u = (u^(-1/3))^3 * x and u^(-1/3) has negative value
    ok1, _ = verify_free_basis([w.parse("x/u")], monomial_basis(w.field), w)
    assert not ok1


def test_free_basis_lex_polynomials():
    nu = lex_valuation(2, 2)
    rng = random.Random(3)
    sample = [random_poly(rng, nu.field.base, 2, 6) for _ in range(50)]
    ok, _ = verify_free_basis(sample, monomial_basis(nu.field), nu)
    assert ok


def test_free_basis_rejects_bad_bases():
    nu = lex_valuation(2, 2)
    K = nu.field
    with pytest.raises(BasisError):
        verify_free_basis([K.one()], [K.one(), K.parse("x1")], nu)
    with pytest.raises(BasisError):
        verify_free_basis([K.one()], [K.one(), K.parse("x1 + 1"), K.parse("x2"), K.parse("x1*x2")], nu)
    with pytest.raises(BasisError):
        verify_free_basis([K.one()], [K.one(), K.parse("x1^3"), K.parse("x2"), K.parse("x1")], nu)
