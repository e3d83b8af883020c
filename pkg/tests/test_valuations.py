import random

import pytest

from conftest import make_field, random_poly
from valfrob.errors import DescriptorError, NotMonomializedError, PrecisionExhausted, ZeroValueError
from valfrob.gf import field
from valfrob.groups import Embedded, Lex, oracle
from valfrob.poly import RationalFunction
from valfrob.valuations import (
    MAX_LEVEL,
    GaussValuation,
    MonomialValuation,
    gauss_value,
    initial_form,
    lex_valuation,
    monomial_value,
    residue,
    residue_field_of,
    verify_monomialized,
)


def blowup_original(p=2):
    K = make_field(p, ["x", "y", "z"])
    E = Embedded(oracle("pi"))
    return MonomialValuation(K, E, {"x": E.element([1, 0]), "y": E.element([1, 0]), "z": E.element([0, 1])},
                             parameters=("x", "y", "z"))


def blowup_target(p=2):
    K = make_field(p, ["x", "u", "w"])
    E = Embedded(oracle("pi"))
    return MonomialValuation(K, E, {"x": E.element([1, 0]), "u": E.zero(), "w": E.element([-1, 1])},
                             parameters=("x", "w"), residue_vars=("u",))


def test_lex_values():
    nu = lex_valuation(3, 3)
    K = nu.field
    assert monomial_value(K.parse("x1"), nu).to_json() == [1, 0, 0]
    assert nu(K.parse("2")).is_zero()
    assert nu(K.parse("x1 + x2")).to_json() == [0, 1, 0]
    assert initial_form(K.parse("x1 + x2"), nu).terms == {(0, 1, 0): 1}


def test_blowup_values_and_initial_form():
    nu = blowup_original()
    K = nu.field
    f = K.parse("x*y + z^2")
    assert nu(f).to_json() == [2, 0]
    assert initial_form(f, nu) == K.parse("x*y").as_polynomial()


def test_zero_has_no_value():
    nu = lex_valuation(2, 2)
    with pytest.raises(ZeroValueError):
        nu(nu.field.zero())


@pytest.mark.parametrize("make", [lambda: lex_valuation(2, 2), lambda: lex_valuation(5, 3),
                                  blowup_original, blowup_target])
def test_valuation_axioms(make):
    nu = make()
    F, n = nu.field.base, nu.field.n
    rng = random.Random(7)
    for _ in range(200):
        f, g = random_poly(rng, F, n, 5), random_poly(rng, F, n, 5)
        assert nu(f * g) == nu(f) + nu(g)
        s = f + g
        if not s.is_zero():
            lo = min(nu(f), nu(g))
            assert nu(s) >= lo
            if nu(f) != nu(g):
                assert nu(s) == lo
        # brute-force minimum over the support
        best = min(sum((w * a for w, a in zip(nu._w, e)), nu.group.zero()) for e in f.terms)
        assert nu(f) == best


def test_rational_function_values_are_well_defined():
    nu = lex_valuation(3, 2)
    K = nu.field
    a = K.parse("(x1 + x2)*x2/(x2^2 + x1*x2)")
    assert nu(a).is_zero()
    assert nu(K.parse("x1/x2")).to_json() == [1, -1]


def test_residue_fields():
    assert residue_field_of(lex_valuation(2, 3)).variables == ()
    kappa = residue_field_of(blowup_original())
    assert len(kappa.variables) == 1 and "y/x" in kappa.describe()
    K = make_field(3, ["x", "y"])
    G = Lex(1)
    triv = MonomialValuation(K, G, {"x": G.zero(), "y": G.zero()})
    assert residue_field_of(triv).n == 2
    assert triv.residue_field_degree() == 9


def test_residues():
    T = blowup_target()
    assert residue(T.field.parse("u"), T) == T.residue_field_of().parse("u")
    nu = lex_valuation(2, 2)
    assert residue(nu.field.parse("1 + x1"), nu) == nu.residue_field_of().one()
    K = make_field(3, ["x", "y"])
    G = Lex(1)
    w = MonomialValuation(K, G, {"x": G.element([1]), "y": G.element([1])})
    r = residue(K.parse("(x*y + y^2)/x^2"), w)
    kappa = w.residue_field_of()
    assert r == kappa.parse("t + t^2")


def test_residue_is_multiplicative():
    K = make_field(3, ["x", "y"])
    G = Lex(1)
    w = MonomialValuation(K, G, {"x": G.element([1]), "y": G.element([1])})
    rng = random.Random(3)
    count = 0
    while count < 40:
        a, b = w.random_ring_element(rng), w.random_ring_element(rng)
        if not (w(a).is_zero() and w(b).is_zero()):
            continue
        assert w.residue(a * b) == w.residue(a) * w.residue(b)
        count += 1


def test_residue_refused_for_bad_partition():
    nu = blowup_original()
    with pytest.raises(NotMonomializedError):
        nu.residue(nu.field.parse("y/x"))


def test_verify_monomialized_cases():
    assert verify_monomialized(lex_valuation(3, 3))[0]
    ok, diag = verify_monomialized(blowup_original())
    assert not ok and any("3 parameter weights for a group of rank 2" in d for d in diag)
    assert verify_monomialized(blowup_target())[0]
    L = Lex(1)
    K = make_field(2, ["x"])
    assert not MonomialValuation(K, L, {"x": L.element([2])}, parameters=("x",)).monomialized


def test_check_monomialization():
    T = blowup_target()
    nu = blowup_original()
    m = {"x": T.field.parse("x"), "y": T.field.parse("u*x"), "z": T.field.parse("w*x")}
    nu.monomialization = (m, T)
    ok, diag = nu.check_monomialization(samples=100)
    assert ok, diag
    bad = {"x": T.field.parse("x"), "y": T.field.parse("x^2"), "z": T.field.parse("w*x")}
    nu.monomialization = (bad, T)
    assert not nu.check_monomialization()[0]


def test_canonical_center():
    dim, kappa_R = blowup_target().canonical_center()
    assert dim == 2 and kappa_R.variables == ("u",)
    assert lex_valuation(2, 4).canonical_center()[0] == 4


def test_descriptor_errors():
    K = make_field(2, ["x", "y"])
    L = Lex(1)
    with pytest.raises(DescriptorError):
        MonomialValuation(K, L, {"x": L.element([1])})
    with pytest.raises(DescriptorError):
        MonomialValuation(K, L, {"x": L.element([1]), "y": L.element([-1])})


def test_gauss_values():
    w = GaussValuation(3)
    assert gauss_value(w.parse("x"), w).to_json() == [[0, 0], [1]]
    assert w(w.parse("u")).to_json() == [[1, 0], [0]]
    assert w(w.parse("u*x^2 + x^3")).to_json() == [[0, 0], [3]]
    z = GaussValuation(3, "z_first")
    assert z(z.parse("u*x^2 + x^3")).to_json() == [[2], [1, 0]]


def test_gauss_lift_preserves_values():
    w = GaussValuation(2)
    rng = random.Random(5)
    for _ in range(50):
        f = w.random_ring_element(rng)
        g = w.lift(f, 2)
        assert w.escalate(2)(g) == w(f)


def test_gauss_level_cap():
    with pytest.raises(PrecisionExhausted):
        GaussValuation(2, level=MAX_LEVEL).escalate()
    with pytest.raises(DescriptorError):
        GaussValuation(2, "sideways")


def test_gauss_field_degree():
    assert GaussValuation(5).field.degree_over_pth_powers() == 5


def test_json_describe():
    nu = blowup_target()
    d = nu.to_json()
    assert d["parameters"] == ["x", "w"] and d["weights"]["w"] == [-1, 1]
    assert "monomial valuation" in nu.describe()


def test_extension_field_coefficients():
    nu = lex_valuation(2, 2, k=2)
    K = nu.field
    assert nu(K.parse("g*x1 + x2^3")).to_json() == [0, 3]
    assert RationalFunction.from_polynomial(K, K.parse("g").as_polynomial()) == K.const(field(2, 2).generator())
