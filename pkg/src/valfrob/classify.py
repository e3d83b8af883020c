"""Degree identities, Abhyankar-center checks and the F-finite / split verdicts.

Verdicts consume declared descriptors.  Each verdict carries one citation, a
short statement of the result it rests on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .errors import DescriptorError, InequalityViolation
from .frobsplit import claim_suite
from .groups import Lex, PDivisible, ValueGroup
from .poly import FieldDescriptor
from .series import SeriesEmbedding
from .valuations import GaussValuation, MonomialValuation

REPORT_SCHEMA = "valfrob.report/1"

CITE = {
    "degree": "[K:K^p] = [k:k^p] p^n for a function field in n variables over k; 1 for a perfect field",
    "defect": "nu is Abhyankar iff nu/nu^p is defectless: [Gamma:p Gamma][kappa:kappa^p] = [K:K^p]",
    "abhyankar_center": "R is an Abhyankar center iff rat.rank Gamma + trdeg(kappa_nu/kappa_R) = dim R "
                        "(the left side never exceeds dim R)",
    "center_degree": "[K:K^p] = p^dim(R) [kappa_R:kappa_R^p] for F-finite Noetherian local domains R",
    "fibre": "dim_{kappa^p} V/m^[p] is p[kappa:kappa^p] if m is finitely generated, [kappa:kappa^p] otherwise",
    "f_finite": "V is F-finite iff dim_{kappa^p} V/m^[p] = [K:K^p]",
    "dvr": "V is Noetherian iff Gamma is 0 or discrete of rank 1 (a DVR)",
    "rule1": "a Noetherian valuation ring with F-finite fraction field is Frobenius split iff it is F-finite",
    "rule2": "F-finite valuation rings are Frobenius split",
    "rule3": "if nu/nu^p is totally unramified and K is not perfect, V is not Frobenius split",
    "rule4": "valuation rings of Abhyankar valuations over perfect ground fields are Frobenius split: "
             "the monomial splitting of a monomialized center extends to V",
    "rule5": "no splitting criterion is known when the defect of nu/nu^p is strictly between the extremes",
    "non_noetherian_f_finite": "a non-Noetherian F-finite valuation ring is not centered on any "
                               "excellent local domain with fraction field K",
    "dim_exceeds": "if Krull dim V > s where [K:K^p] = p^s, nu is not centered on any excellent "
                   "local domain with fraction field K",
    "prop_bound": "[Gamma:p Gamma][kappa:kappa^p] <= p^dim(R) [kappa_R:kappa_R^p] for any Noetherian center R",
    "dichotomy": "for F-finite V with Gamma != 0: [Gamma:p Gamma] is 1 or p, and V is a DVR if Gamma is "
                 "finitely generated",
}


@dataclass
class CenterDescriptor:
    dimension: int
    residue_field: FieldDescriptor
    canonical: bool = False
    label: str | None = None

    def __post_init__(self):
        if self.dimension < 0:
            raise DescriptorError("center dimension must be >= 0")

    def to_json(self):
        d = {"dimension": self.dimension, "residue_field": self.residue_field.to_json(),
             "canonical": self.canonical}
        if self.label:
            d["label"] = self.label
        return d


@dataclass
class ValuationDescriptor:
    """A valuation as the classifier sees it: K, Gamma, kappa and an optional engine."""

    kind: str
    field: FieldDescriptor
    group: ValueGroup
    residue_field: FieldDescriptor
    valuation: object = None
    name: str | None = None
    source: dict | None = None

    @property
    def p(self):
        return self.field.p

    def canonical_center(self) -> CenterDescriptor | None:
        if isinstance(self.valuation, MonomialValuation):
            dim, kappa_R = self.valuation.canonical_center()
            pos = [v for v in self.field.variables if not self.valuation.weights[v].is_zero()]
            label = f"F_{self.field.base.q}[{', '.join(self.field.variables)}]_({', '.join(pos)})"
            return CenterDescriptor(dim, kappa_R, canonical=True, label=label)
        return None

    def to_json(self):
        if self.source is not None:
            return self.source
        return {"kind": self.kind, "field": self.field.to_json(), "group": self.group.to_json(),
                "residue_field": self.residue_field.to_json()}


def from_monomial(nu: MonomialValuation, name=None, source=None) -> ValuationDescriptor:
    return ValuationDescriptor("monomial", nu.field, nu.value_group(), nu.residue_field_of(), nu,
                               name or nu.name, source)


def from_gauss(w: GaussValuation, name=None, source=None) -> ValuationDescriptor:
    return ValuationDescriptor("gauss", w.field, w.group, w.residue_field_of(), w, name, source)


def from_series(E: SeriesEmbedding, name=None, source=None) -> ValuationDescriptor:
    from .gf import field

    K = FieldDescriptor(field(E.p), E.variables)
    return ValuationDescriptor("series", K, Lex(1), FieldDescriptor(field(E.p), ()), E, name, source)


def hahn_descriptor(p: int, name=None, source=None) -> ValuationDescriptor:
    from .gf import field

    F = field(p)
    return ValuationDescriptor("hahn", FieldDescriptor(F, ("x", "y")), PDivisible(p), FieldDescriptor(F, ()),
                               None, name, source)


# -- numeric criteria -------------------------------------------------------------


def degree_K_Kp(K: FieldDescriptor) -> int:
    return K.degree_over_pth_powers()


def _trdeg(K: FieldDescriptor) -> int:
    if K.perfected:
        return 0
    return len(K.variables) - len(K.perfect_variables)


def defect_identity(nu: ValuationDescriptor):
    """(holds, lhs, rhs) with lhs = [Gamma:p Gamma][kappa:kappa^p], rhs = [K:K^p]."""
    idx = nu.group.index_p_gamma(nu.p)
    lhs = idx * degree_K_Kp(nu.residue_field)
    rhs = degree_K_Kp(nu.field)
    return lhs == rhs, lhs, rhs


def abhyankar_center_check(nu: ValuationDescriptor, R: CenterDescriptor):
    """(holds, lhs, dim R) with lhs = rat.rank + trdeg(kappa_nu / kappa_R)."""
    kn, kr = nu.residue_field, R.residue_field
    if kn.p != kr.p or kr.base.k > kn.base.k:
        raise DescriptorError("residue fields of valuation and center are incomparable")
    t = _trdeg(kn) - _trdeg(kr)
    if t < 0:
        raise DescriptorError("center residue field has larger transcendence degree than kappa_nu")
    lhs = nu.group.rational_rank + t
    if lhs > R.dimension:
        raise InequalityViolation(
            f"rat.rank + trdeg = {lhs} exceeds dim R = {R.dimension}: inconsistent descriptors"
        )
    return lhs == R.dimension, lhs, R.dimension


def center_degree_identity(R: CenterDescriptor, K: FieldDescriptor):
    """(holds, p^dim R [kappa_R:kappa_R^p], [K:K^p])."""
    lhs = K.p**R.dimension * degree_K_Kp(R.residue_field)
    rhs = degree_K_Kp(K)
    return lhs == rhs, lhs, rhs


def center_bound_guard(nu: ValuationDescriptor, R: CenterDescriptor):
    """Raise InequalityViolation unless [Gamma:p Gamma][kappa:kappa^p] <= p^dim R [kappa_R:kappa_R^p]."""
    lhs = nu.group.index_p_gamma(nu.p) * degree_K_Kp(nu.residue_field)
    rhs = nu.p**R.dimension * degree_K_Kp(R.residue_field)
    if lhs > rhs:
        raise InequalityViolation(f"{lhs} > {rhs}: {CITE['prop_bound']}")
    return lhs, rhs


def is_noetherian(nu: ValuationDescriptor) -> bool:
    G = nu.group
    if G.rational_rank == 0:
        return True
    return G.finitely_generated and G.rational_rank == 1 and G.smallest_positive() is not None


def is_dvr(nu: ValuationDescriptor) -> bool:
    return nu.group.rational_rank == 1 and is_noetherian(nu)


def fibre_dimension(nu: ValuationDescriptor):
    """(dim_{kappa^p} V/m^[p], m finitely generated)."""
    kd = degree_K_Kp(nu.residue_field)
    if nu.group.rational_rank == 0:
        # trivial valuation: V = K, m = 0
        return kd, True
    fg = nu.group.smallest_positive() is not None
    return (nu.p * kd if fg else kd), fg


@dataclass
class Verdict:
    value: str
    citation: str
    rule: int | None = None
    detail: dict = dc_field(default_factory=dict)
    witness: object = None

    def to_json(self):
        d = {"value": self.value, "citation": self.citation}
        if self.rule is not None:
            d["rule"] = self.rule
        if self.detail:
            d["detail"] = self.detail
        if self.witness is not None:
            d["witness"] = self.witness.to_json()
        return d


def f_finite_verdict(nu: ValuationDescriptor) -> Verdict:
    fd, fg = fibre_dimension(nu)
    kk = degree_K_Kp(nu.field)
    yes = fd == kk
    v = Verdict("yes" if yes else "no", CITE["f_finite"],
                detail={"fibre_dimension": fd, "degree_K_Kp": kk})
    if yes and nu.group.rational_rank > 0:
        idx = nu.group.index_p_gamma(nu.p)
        if idx not in (1, nu.p):
            raise DescriptorError(f"F-finite verdict with [Gamma:p Gamma] = {idx}: {CITE['dichotomy']}")
        if nu.group.finitely_generated and not is_dvr(nu):
            raise DescriptorError(f"F-finite verdict with finitely generated non-discrete Gamma: {CITE['dichotomy']}")
    return v


def _rule4(nu: ValuationDescriptor, samples: int, seed: int):
    """(witness or None, diagnostics) for monomialized descriptors."""
    val = nu.valuation
    if not isinstance(val, MonomialValuation):
        return None, ["not a monomial descriptor"]
    ok, diag = val.verify_monomialized()
    if ok:
        return claim_suite(val, samples=samples, seed=seed), []
    if val.monomialization is not None:
        ok2, diag2 = val.check_monomialization(samples=min(samples, 100), seed=seed)
        if ok2:
            mapping, target = val.monomialization
            w = claim_suite(target, samples=samples, seed=seed)
            w.substitution = {v: mapping[v].render() for v in val.field.variables}
            return w, []
        return None, diag + diag2
    return None, diag


def split_verdict(nu: ValuationDescriptor, samples: int = 200, seed: int = 0) -> Verdict:
    ff = f_finite_verdict(nu)
    if is_noetherian(nu):
        return Verdict(ff.value, CITE["rule1"], rule=1, detail={"f_finite": ff.value})
    if ff.value == "yes":
        return Verdict("yes", CITE["rule2"], rule=2)
    idx = nu.group.index_p_gamma(nu.p)
    prod = idx * degree_K_Kp(nu.residue_field)
    if prod == 1 and degree_K_Kp(nu.field) > 1:
        return Verdict("no", CITE["rule3"], rule=3, detail={"defect_product": prod})
    witness, diag = _rule4(nu, samples, seed)
    if witness is not None:
        if witness.passed:
            return Verdict("yes", CITE["rule4"], rule=4, witness=witness)
        return Verdict("unknown", CITE["rule5"], rule=5,
                       detail={"defect_product": prod, "claim_suite": "failed"}, witness=witness)
    detail = {"defect_product": prod, "degree_K_Kp": degree_K_Kp(nu.field)}
    if diag:
        detail["not_monomialized"] = diag
    return Verdict("unknown", CITE["rule5"], rule=5, detail=detail)


@dataclass
class ClassificationReport:
    descriptor: dict
    degrees: dict
    checks: dict
    verdicts: dict
    notes: list
    center: dict | None = None
    parameters: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "schema": REPORT_SCHEMA,
            "descriptor": self.descriptor,
            "center": self.center,
            "degrees": self.degrees,
            "checks": self.checks,
            "verdicts": {k: v.to_json() for k, v in self.verdicts.items()},
            "notes": self.notes,
            "parameters": self.parameters,
        }

    def to_text(self):
        lines = [f"valuation: {self.descriptor.get('name') or self.descriptor.get('kind')}"]
        for k, v in self.degrees.items():
            lines.append(f"  {k} = {v}")
        for k, v in self.checks.items():
            lines.append(f"  {k}: {v}")
        for k, v in self.verdicts.items():
            rule = f" (rule {v.rule})" if v.rule is not None else ""
            lines.append(f"{k}: {v.value}{rule}")
            lines.append(f"    because: {v.citation}")
            if v.witness is not None:
                for entry in v.witness.log:
                    mark = "ok" if entry["passed"] else "FAILED"
                    lines.append(f"    witness: {entry['property']} [{entry['samples']} samples] {mark}")
        for n in self.notes:
            lines.append(f"note: {n}")
        return "\n".join(lines)


def classify(nu: ValuationDescriptor, center: CenterDescriptor | None = None, samples: int = 200,
             seed: int = 0) -> ClassificationReport:
    p = nu.p
    kk = degree_K_Kp(nu.field)
    idx = nu.group.index_p_gamma(p)
    kap = degree_K_Kp(nu.residue_field)
    fd, fg = fibre_dimension(nu)
    degrees = {
        "K_Kp": kk,
        "Gamma_pGamma": idx,
        "kappa_kappap": kap,
        "fibre_dimension": fd,
        "rational_rank": nu.group.rational_rank,
        "trdeg_kappa": _trdeg(nu.residue_field),
    }
    d_ok, d_l, d_r = defect_identity(nu)
    checks = {
        "defect_identity": {"holds": d_ok, "lhs": d_l, "rhs": d_r, "citation": CITE["defect"]},
        "maximal_ideal_finitely_generated": fg,
        "dvr": {"value": is_dvr(nu), "citation": CITE["dvr"]},
    }
    if center is None:
        center = nu.canonical_center()
    if center is not None:
        center_bound_guard(nu, center)
        a_ok, a_l, a_r = abhyankar_center_check(nu, center)
        c_ok, c_l, c_r = center_degree_identity(center, nu.field)
        checks["abhyankar_center"] = {"holds": a_ok, "lhs": a_l, "dim_R": a_r, "citation": CITE["abhyankar_center"]}
        checks["center_degree_identity"] = {"holds": c_ok, "lhs": c_l, "rhs": c_r, "citation": CITE["center_degree"]}
    if isinstance(nu.valuation, MonomialValuation):
        ok, diag = nu.valuation.verify_monomialized()
        checks["monomialized"] = {"value": ok, "diagnostics": diag}
    ff = f_finite_verdict(nu)
    sp = split_verdict(nu, samples=samples, seed=seed)
    verdicts = {"f_finite": ff, "frobenius_split": sp,
                "dvr": Verdict("yes" if is_dvr(nu) else "no", CITE["dvr"])}
    notes = []
    if ff.value == "yes" and not is_noetherian(nu):
        notes.append(CITE["non_noetherian_f_finite"])
    s = _log_p(kk, p)
    krull = nu.group.convex_rank()
    if s is not None and krull > s:
        notes.append(f"Krull dim V = {krull} > s = {s}: " + CITE["dim_exceeds"])
    params = {"samples": samples, "seed": seed}
    if isinstance(nu.valuation, SeriesEmbedding):
        params.update(series_seed=nu.valuation.seed, precision=nu.valuation.precision)
    desc = dict(nu.to_json())
    if nu.name:
        desc["name"] = nu.name
    return ClassificationReport(desc, degrees, checks, verdicts, notes,
                                center.to_json() if center is not None else None, params)


def _log_p(n, p):
    s = 0
    while n > 1 and n % p == 0:
        n //= p
        s += 1
    return s if n == 1 else None


def sample_positive_values(G, rng: random.Random, count: int):
    out = []
    while len(out) < count:
        g = G.random_element(rng)
        if g.sign() > 0:
            out.append(g)
    return out
