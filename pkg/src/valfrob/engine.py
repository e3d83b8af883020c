"""Descriptor-level evaluation, splitting and verification used by the CLI and gallery."""

from __future__ import annotations

import random

from .classify import ValuationDescriptor, sample_positive_values
from .errors import DescriptorError
from .frobsplit import claim_suite, extend_split, monomial_basis, verify_free_basis
from .groups import unit_pth_power_factor
from .poly import Polynomial, substitute
from .series import (
    LazySeries,
    SeriesEmbedding,
    hahn_embed_value,
    series_frobenius,
    series_split,
)
from .valuations import GaussValuation, MonomialValuation

TRUNCATION = 200


def evaluate(nu: ValuationDescriptor, expr: str) -> dict:
    """{input, value} for the descriptor's valuation engine."""
    K = nu.field
    f = K.parse(expr)
    val = nu.valuation
    out = {"input": f.render(), "kind": nu.kind}
    if isinstance(val, (MonomialValuation, GaussValuation)):
        g = val.value(f)
        out["value"] = g.to_json()
        out["value_text"] = g.render()
        if isinstance(val, MonomialValuation) and g.is_zero() and not (val.parameters or val.residue_vars):
            out["residue"] = val.residue(f).render()
    elif isinstance(val, SeriesEmbedding):
        out["value"] = val.value(f)
        out["value_text"] = str(out["value"])
        out["seed"] = val.seed
        out["precision"] = val.precision
    elif nu.kind == "hahn":
        g = hahn_embed_value(f, nu.p)
        out["value"] = g.render()
        out["value_text"] = g.render()
    else:
        raise DescriptorError(f"no evaluation engine for a {nu.kind} descriptor")
    return out


def _series_from_poly(f: Polynomial, p: int) -> LazySeries:
    deg = max(e[0] for e in f.terms) if f.terms else 0
    coeffs = [0] * (deg + 1)
    for (a,), c in f.terms.items():
        coeffs[a] = c
    return LazySeries.from_coeffs(p, coeffs)


def _render_series(coeffs, var="t") -> str:
    parts = []
    for i, c in enumerate(coeffs):
        c = int(c)
        if not c:
            continue
        mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i == 0:
            parts.append(str(c))
        else:
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts) or "0"


def split(nu: ValuationDescriptor, expr: str) -> dict:
    """Apply the splitting of the descriptor's valuation ring to ``expr``."""
    val = nu.valuation
    K = nu.field
    f = K.parse(expr)
    if isinstance(val, MonomialValuation):
        target, g, coords = val, f, "original"
        if not val.monomialized and val.monomialization is not None:
            ok, diag = val.check_monomialization()
            if not ok:
                raise DescriptorError("declared monomialization is inconsistent: " + "; ".join(diag))
            mapping, target = val.monomialization
            g = substitute(f, mapping, target.field)
            coords = "monomialized"
        img = extend_split(g, target)
        vin = target.value(g) if not g.is_zero() else None
        vout = target.value(img) if not img.is_zero() else None
        holds = vout is None or target.group._cmp(vout.coords, vin.coords) >= 0
        return {
            "input": g.render(),
            "image": img.render(),
            "value_in": None if vin is None else vin.to_json(),
            "value_out": None if vout is None else vout.to_json(),
            "claim_holds": holds,
            "coordinates": coords,
        }
    if nu.kind == "declared" and nu.field.n == 1 and nu.group.rational_rank == 1 and nu.p == nu.field.base.q:
        # complete DVR kappa[[t]]: the coefficientwise splitting
        g = f.as_polynomial()
        if g is None:
            raise DescriptorError("the complete-DVR splitting takes a polynomial in t")
        x = _series_from_poly(g, nu.p)
        n = max(1, max((e[0] for e in g.terms), default=0) // nu.p + 1)
        img = series_split(x).coeffs(n)
        return {"input": f.render(), "image": _render_series(img, nu.field.variables[0]),
                "claim_holds": True, "coordinates": "series"}
    raise DescriptorError(f"no explicit splitting for a {nu.kind} descriptor")


def verify(nu: ValuationDescriptor, samples: int = 200, seed: int = 0) -> dict:
    """Run the verification sweep appropriate to the descriptor kind."""
    val = nu.valuation
    rng = random.Random(seed)
    if isinstance(val, MonomialValuation):
        target = val
        sub = None
        if not val.monomialized:
            if val.monomialization is None:
                return {"kind": "claim_suite", "passed": False,
                        "reason": "descriptor is not monomialized", "diagnostics": val.verify_monomialized()[1]}
            ok, diag = val.check_monomialization(seed=seed)
            if not ok:
                return {"kind": "claim_suite", "passed": False, "reason": "inconsistent monomialization",
                        "diagnostics": diag}
            target = val.monomialization[1]
            sub = True
        w = claim_suite(target, samples=samples, seed=seed)
        d = {"kind": "claim_suite", "passed": w.passed, "log": w.log}
        if sub:
            d["coordinates"] = "monomialized"
        return d
    if isinstance(val, GaussValuation):
        elems = [val.random_ring_element(rng) for _ in range(samples)]
        ok, certs = verify_free_basis(elems, monomial_basis(val.field), val)
        failing = [c.to_json() for c in certs if not c.ok][:3]
        return {"kind": "free_basis", "basis": [b.render() for b in monomial_basis(val.field)],
                "samples": len(elems), "passed": ok, "failures": failing,
                "certified": sum(c.ok for c in certs)}
    if isinstance(val, SeriesEmbedding):
        return _verify_embedding(nu, val, samples, rng)
    if nu.kind == "declared":
        return _verify_series_laws(nu.p, samples, seed)
    if nu.kind == "hahn":
        vals = sample_positive_values(nu.group, rng, samples)
        ok = True
        for g in vals:
            h = unit_pth_power_factor(g, nu.p)
            ok &= h * nu.p == g and h.sign() > 0
        return {"kind": "p_divisibility", "samples": len(vals), "passed": bool(ok)}
    raise DescriptorError(f"nothing to verify for a {nu.kind} descriptor")


def _verify_embedding(nu, E, samples, rng):
    # embed_value is a valuation: multiplicative on sampled pairs
    K = nu.field
    F = K.base
    ok = True
    bad = None
    for _ in range(samples):
        f, g = _random_xy(rng, F, K.n), _random_xy(rng, F, K.n)
        if E.value(f * g) != E.value(f) + E.value(g):
            ok, bad = False, (f, g)
            break
    d = {"kind": "embedding_multiplicativity", "samples": samples, "passed": ok,
         "seed": E.seed, "precision": E.precision}
    if bad:
        d["first_failure"] = [str(bad[0]), str(bad[1])]
    return d


def _random_xy(rng, F, n):
    while True:
        terms = {}
        for _ in range(rng.randint(1, 4)):
            terms[tuple(rng.randint(0, 4) for _ in range(n))] = rng.randrange(1, F.q)
        f = Polynomial(F, n, terms)
        if not f.is_zero():
            return f


def _verify_series_laws(p, samples, seed):
    import numpy as np

    rng = np.random.default_rng(seed)
    n = TRUNCATION
    ok_add = ok_proj = ok_fix = True
    for _ in range(max(1, samples // 10)):
        a = LazySeries.from_coeffs(p, rng.integers(0, p, n))
        b = LazySeries.from_coeffs(p, rng.integers(0, p, n))
        ok_add &= series_split(a + b).equal_to(series_split(a) + series_split(b), n // p)
        ok_proj &= series_split(series_frobenius(a) * b).equal_to(a * series_split(b), n // p)
        ok_fix &= series_split(series_frobenius(a)).equal_to(a, n // p)
    return {"kind": "series_split_laws", "truncation": n, "passed": bool(ok_add and ok_proj and ok_fix),
            "additivity": bool(ok_add), "projection": bool(ok_proj), "fixes_pth_powers": bool(ok_fix)}

