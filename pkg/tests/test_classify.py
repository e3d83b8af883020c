import pytest

from test_valuations import blowup_original, blowup_target
from valfrob.classify import (
    CITE,
    CenterDescriptor,
    abhyankar_center_check,
    center_bound_guard,
    center_degree_identity,
    classify,
    defect_identity,
    degree_K_Kp,
    f_finite_verdict,
    fibre_dimension,
    from_gauss,
    from_monomial,
    from_series,
    hahn_descriptor,
    is_dvr,
    is_noetherian,
    split_verdict,
)
from valfrob.descriptors import load_valuation
from valfrob.errors import DescriptorError, InequalityViolation
from valfrob.gf import field
from valfrob.poly import FieldDescriptor
from valfrob.series import SeriesEmbedding
from valfrob.valuations import GaussValuation, lex_valuation

P = 3


def kfield(names=(), p=P, **kw):
    return FieldDescriptor(field(p), tuple(names), **kw)


def dvr42(p=P):
    return from_series(SeriesEmbedding(p))


def regular_center(p=P):
    return CenterDescriptor(2, kfield(p=p), label="F_p[X,Y]_(X,Y)")


def test_degree_over_pth_powers():
    assert degree_K_Kp(kfield(("x", "y"))) == P**2
    assert degree_K_Kp(kfield(("s",), perfected=True)) == 1
    assert degree_K_Kp(GaussValuation(P).field) == P


def test_defect_identity():
    assert defect_identity(from_monomial(lex_valuation(P, 3)))[0]
    assert defect_identity(dvr42()) == (False, P, P**2)
    assert defect_identity(from_gauss(GaussValuation(P))) == (True, P, P)


def test_abhyankar_center_check():
    lex = from_monomial(lex_valuation(P, 3))
    assert abhyankar_center_check(lex, lex.canonical_center()) == (True, 3, 3)
    assert abhyankar_center_check(dvr42(), regular_center()) == (False, 1, 2)
    assert abhyankar_center_check(dvr42(), CenterDescriptor(1, kfield(), label="V")) == (True, 1, 1)
    with pytest.raises(InequalityViolation):
        abhyankar_center_check(lex, CenterDescriptor(2, kfield()))


def test_center_degree_identity():
    lex = from_monomial(lex_valuation(P, 2))
    assert center_degree_identity(lex.canonical_center(), lex.field) == (True, P**2, P**2)
    assert center_degree_identity(CenterDescriptor(1, kfield()), dvr42().field)[0] is False
    K = kfield(("x", "y"))
    assert center_degree_identity(CenterDescriptor(0, K), K)[0]


def test_center_bound_guard():
    lex = from_monomial(lex_valuation(P, 2))
    assert center_bound_guard(lex, lex.canonical_center()) == (P**2, P**2)
    with pytest.raises(InequalityViolation):
        center_bound_guard(lex, CenterDescriptor(1, kfield()))


def test_fibre_dimension():
    assert fibre_dimension(from_monomial(lex_valuation(P, 2))) == (P, True)
    assert fibre_dimension(from_gauss(GaussValuation(P, "z_first"))) == (1, False)
    assert fibre_dimension(dvr42()) == (P, True)
    assert fibre_dimension(from_gauss(GaussValuation(P))) == (P, True)


def test_f_finite_verdicts():
    assert f_finite_verdict(from_gauss(GaussValuation(P))).value == "yes"
    assert f_finite_verdict(from_monomial(lex_valuation(P, 2))).value == "no"
    assert f_finite_verdict(dvr42()).value == "no"
    assert f_finite_verdict(from_gauss(GaussValuation(P, "z_first"))).value == "no"
    assert f_finite_verdict(from_monomial(lex_valuation(P, 1))).value == "yes"


def _declared(variables, group, residue_vars):
    return load_valuation({"kind": "declared", "field": {"p": 2, "variables": list(variables)},
                           "group": group, "residue_field": {"p": 2, "variables": list(residue_vars)}})


def test_f_finite_cross_checks():
    lex2 = {"kind": "lex", "rank": 2}
    assert f_finite_verdict(_declared("xy", lex2, "")).value == "no"
    mixed = {"kind": "lex_sum", "components": [{"kind": "p_divisible"}, {"kind": "lex", "rank": 1}]}
    assert f_finite_verdict(_declared("x", mixed, "")).value == "yes"
    # fibre 2 * 2 = [K:K^p] = 4, yet [Gamma : p Gamma] = 4 is neither 1 nor p
    with pytest.raises(DescriptorError):
        f_finite_verdict(_declared("xy", lex2, "t"))


def test_split_verdicts():
    v = split_verdict(from_monomial(lex_valuation(P, 2)), samples=50)
    assert (v.value, v.rule) == ("yes", 4) and v.witness is not None and v.witness.passed
    v = split_verdict(dvr42())
    assert (v.value, v.rule) == ("no", 1)
    v = split_verdict(hahn_descriptor(P))
    assert (v.value, v.rule, v.citation) == ("no", 3, CITE["rule3"])
    v = split_verdict(from_gauss(GaussValuation(P)))
    assert (v.value, v.rule) == ("yes", 2)
    v = split_verdict(from_gauss(GaussValuation(P, "z_first")))
    assert (v.value, v.rule) == ("unknown", 5)


def test_split_verdict_via_declared_monomialization():
    nu = blowup_original()
    T = blowup_target()
    nu.monomialization = ({"x": T.field.parse("x"), "y": T.field.parse("u*x"), "z": T.field.parse("w*x")}, T)
    v = split_verdict(from_monomial(nu), samples=50)
    assert (v.value, v.rule) == ("yes", 4)
    assert v.witness.substitution == {"x": "x", "y": "x*u", "z": "x*w"}


def test_split_verdict_unknown_without_monomialization():
    v = split_verdict(from_monomial(blowup_original()), samples=20)
    assert v.value == "unknown" and "not_monomialized" in v.detail


def test_noetherian_predicates():
    assert is_noetherian(dvr42()) and is_dvr(dvr42())
    assert not is_noetherian(from_monomial(lex_valuation(P, 2)))
    assert not is_noetherian(from_gauss(GaussValuation(P)))
    assert not is_noetherian(from_monomial(blowup_target()))


def test_report_notes_for_gauss():
    rep = classify(from_gauss(GaussValuation(P)), samples=10)
    notes = " ".join(rep.notes)
    assert CITE["non_noetherian_f_finite"] in notes
    assert "Krull dim V = 2 > s = 1" in notes
    j = rep.to_json()
    assert j["schema"] == "valfrob.report/1"
    assert j["verdicts"]["f_finite"]["value"] == "yes"
    assert "because:" in rep.to_text()


def test_report_records_series_parameters():
    rep = classify(dvr42(), regular_center(), samples=10, seed=4).to_json()
    assert rep["parameters"] == {"samples": 10, "seed": 4, "series_seed": 20240607, "precision": 256}
    assert rep["checks"]["abhyankar_center"]["holds"] is False


def test_canonical_center_defaults():
    rep = classify(from_monomial(blowup_target()), samples=10).to_json()
    assert rep["center"]["dimension"] == 2
    assert rep["checks"]["abhyankar_center"]["holds"] is True
