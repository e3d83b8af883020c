"""Frobenius decomposition in the monomial p-basis and the induced splittings.

Over a perfect ground field every polynomial is uniquely

    f = sum_beta c_beta^(p^e) * x^beta,   0 <= beta_i < p^e,

and the splitting sends f to the beta = 0 component c_0^(p^e).  On the
valuation ring it is extended by phi~(a/b) = phi(a * b^(q-1)) / b^q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .errors import BasisError, NotMonomializedError, OutsideValuationRingError, ValuationError
from .poly import Polynomial, RationalFunction, frobenius_power
from .valuations import GaussValuation, MonomialValuation


@dataclass(frozen=True)
class FrobDecomposition:
    """f = sum c_beta^(p^e) x^beta; ``perfect`` indices are not split (see p_decompose)."""

    e: int
    p: int
    n: int
    coeffs: dict
    perfect: tuple = ()

    @property
    def q(self):
        return self.p**self.e

    def recompose(self) -> Polynomial:
        out = {}
        F = None
        for beta, c in self.coeffs.items():
            F = c.F
            for exp, a in c.terms.items():
                new = tuple(x if i in self.perfect else x * self.q + b
                            for i, (x, b) in enumerate(zip(exp, beta)))
                out[new] = F.frobenius(a, self.e)
        if F is None:
            return None
        return Polynomial(F, self.n, out, _trusted=True)


def p_decompose(f: Polynomial, e: int = 1, perfect=()) -> FrobDecomposition:
    """Split f by exponent residues mod p^e and take p^e-th roots of the pieces.

    Variables listed in ``perfect`` (indices) have all their p-power roots in the
    field; their exponents are kept as they are, which means the coefficient
    c_beta is to be read at perfection level +e.
    """
    if e < 1:
        raise ValueError("iteration must be >= 1")
    F = f.F
    q = F.p**e
    perfect = tuple(perfect)
    pieces = {}
    for exp, c in f.terms.items():
        beta = tuple(0 if i in perfect else a % q for i, a in enumerate(exp))
        root = tuple(a if i in perfect else a // q for i, a in enumerate(exp))
        pieces.setdefault(beta, {})[root] = F.pth_root(c, e)
    coeffs = {b: Polynomial(F, f.n, t, _trusted=True) for b, t in pieces.items()}
    return FrobDecomposition(e, F.p, f.n, coeffs, perfect)


def _require_monomialized(nu):
    if not isinstance(nu, MonomialValuation):
        raise NotMonomializedError("the splitting needs a monomial valuation descriptor")
    ok, diag = nu.verify_monomialized()
    if not ok:
        raise NotMonomializedError("descriptor is not monomialized: " + "; ".join(diag))


def _eta_poly(f: Polynomial, q: int) -> Polynomial:
    # the beta = 0 component c_0^q: exactly the terms with all exponents divisible by q
    return Polynomial(f.F, f.n, {e: c for e, c in f.terms.items() if all(a % q == 0 for a in e)},
                      _trusted=True)


def _eta_product(a: Polynomial, b: Polynomial, q: int) -> Polynomial:
    """eta(a * b) without forming the full product."""
    classes = {}
    for e, c in b.terms.items():
        classes.setdefault(tuple(x % q for x in e), []).append((e, c))
    F = a.F
    out = {}
    for ea, ca in a.terms.items():
        need = tuple((-x) % q for x in ea)
        for eb, cb in classes.get(need, ()):
            k = tuple(x + y for x, y in zip(ea, eb))
            out[k] = F.add(out.get(k, 0), F.mul(ca, cb))
    return Polynomial(F, a.n, {k: c for k, c in out.items() if c}, _trusted=True)


def _as_poly(f):
    if isinstance(f, Polynomial):
        return f
    g = f.as_polynomial()
    if g is None:
        raise ValuationError("eta_split is defined on the polynomial subring")
    return g


def eta_split(f, nu: MonomialValuation, e: int = 1) -> RationalFunction:
    """The splitting of F_q[x] sending x^beta to itself if p^e | beta, else to 0."""
    _require_monomialized(nu)
    g = _as_poly(f)
    return RationalFunction.from_polynomial(nu.field, _eta_poly(g, nu.p**e))


def extend_split(r, nu: MonomialValuation, e: int = 1) -> RationalFunction:
    """phi(a * b^(q-1)) / b^q for r = a/b in the valuation ring."""
    _require_monomialized(nu)
    K = nu.field
    if isinstance(r, Polynomial):
        r = RationalFunction.from_polynomial(K, r)
    if r.is_zero():
        return K.zero()
    v = nu.value(r)
    if v.sign() < 0:
        raise OutsideValuationRingError(f"value {v.render()} < 0: element is outside the valuation ring")
    q = nu.p**e
    a, b = r.num, r.den
    if b.is_constant():
        c = K.base.inv(b.constant_term())
        return RationalFunction.from_polynomial(K, _eta_poly(a, q).scale(c))
    top = _eta_product(a, b ** (q - 1), q)
    return RationalFunction(K, top, b**q)


def inf_eq_sides(f: Polynomial, nu: MonomialValuation, e: int = 1):
    """(nu(f), inf_beta nu(c_beta^q x^beta))."""
    f = _as_poly(f)
    left = nu.poly_value(f)
    D = p_decompose(f, e)
    q = nu.p**e
    G = nu.group
    right = None
    for beta, c in D.coeffs.items():
        t = nu.poly_value(c) * q + nu.exponent_value(beta)
        if right is None or G._cmp(t.coords, right.coords) < 0:
            right = t
    return left, right


def verify_inf_eq(f, nu: MonomialValuation, e: int = 1) -> bool:
    _require_monomialized(nu)
    left, right = inf_eq_sides(f, nu, e)
    return left == right


def verify_claim(a, nu: MonomialValuation, e: int = 1) -> bool:
    """eta(a) = 0 or nu(eta(a)) >= nu(a)."""
    a = _as_poly(a)
    eta = eta_split(a, nu, e)
    if eta.is_zero():
        return True
    return nu.group._cmp(nu.value(eta).coords, nu.poly_value(a).coords) >= 0


# -- free bases ---------------------------------------------------------------


@dataclass
class BasisCertificate:
    element: str
    coefficients: dict
    values: dict
    ok: bool

    def to_json(self):
        return {"element": self.element, "coefficients": self.coefficients, "values": self.values,
                "certified": self.ok}


def _basis_classes(basis, K, perfect, q):
    classes = {}
    for idx, b in enumerate(basis):
        if not (b.num.is_monomial() and b.den.is_monomial()) or b.is_zero():
            raise BasisError(f"basis element {b.render()} is not a monomial")
        (en, cn), = b.num.terms.items()
        (ed, cd), = b.den.terms.items()
        gamma = tuple(x - y for x, y in zip(en, ed))
        if any(gamma[i] for i in perfect):
            raise BasisError(f"basis element {b.render()} involves a perfect variable")
        cls = tuple(0 if i in perfect else g % q for i, g in enumerate(gamma))
        if cls in classes:
            raise BasisError("basis elements are dependent over K^(p^e)")
        classes[cls] = (idx, gamma, K.base.mul(cn, K.base.inv(cd)))
    m = K.n - len(perfect)
    if len(classes) != q**m:
        raise BasisError(f"{len(classes)} elements cannot span a space of dimension {q ** m}")
    return classes


def verify_free_basis(sample, basis, nu, e: int = 1):
    """Write each v as sum r_i^q b_i over K^q and check nu(r_i) >= 0.

    Returns (all certified, list of BasisCertificate).  For a Gauss valuation
    the coefficients r_i live at perfection level + e.
    """
    if isinstance(nu, GaussValuation):
        mono, K = nu.monomial, nu.field
        target = nu.escalate(e)
        tval, tK = target.monomial, target.field
    else:
        mono, K = nu, nu.field
        tval, tK = nu, nu.field
    F = K.base
    perfect = tuple(K.index(v) for v in K.perfect_variables)
    q = F.p**e
    classes = _basis_classes(basis, K, perfect, q)
    certs = []
    all_ok = True
    for v in sample:
        if isinstance(v, Polynomial):
            v = RationalFunction.from_polynomial(K, v)
        if not v.is_zero() and mono.value(v).sign() < 0:
            raise OutsideValuationRingError(f"{v.render()} is not in the valuation ring")
        N = v.num * v.den ** (q - 1)
        den = v.den
        # the p^e-th root of den^q, written at the target level
        den_t = Polynomial(F, K.n, {tuple(a * q if i in perfect else a for i, a in enumerate(ex)): c
                                    for ex, c in den.terms.items()}, _trusted=True)
        D = p_decompose(N, e, perfect) if not N.is_zero() else FrobDecomposition(e, F.p, K.n, {}, perfect)
        coeffs, values, ok = {}, {}, True
        recomposed = K.zero()
        for beta, c in D.coeffs.items():
            idx, gamma, unit = classes[beta]
            shift = tuple(0 if i in perfect else (b - g) // q for i, (b, g) in enumerate(zip(beta, gamma)))
            pos = tuple(max(s, 0) for s in shift)
            neg = tuple(max(-s, 0) for s in shift)
            cu = F.pth_root(F.inv(unit), e)
            r = RationalFunction(tK, c.shift(pos).scale(cu), den_t * Polynomial.monomial(F, K.n, neg))
            val = tval.value(r)
            coeffs[str(idx)] = r.render()
            values[str(idx)] = val.render()
            if val.sign() < 0:
                ok = False
            # r^q read back at the original level
            rq = frobenius_power(r, e)
            back = RationalFunction(K, _lower(rq.num, perfect, q), _lower(rq.den, perfect, q))
            recomposed = recomposed + back * basis[idx]
        if recomposed != v:
            raise AssertionError(f"basis expansion of {v.render()} does not recompose")
        all_ok &= ok
        certs.append(BasisCertificate(v.render(), coeffs, values, ok))
    return all_ok, certs


def _lower(f: Polynomial, perfect, q):
    terms = {}
    for ex, c in f.terms.items():
        if any(ex[i] % q for i in perfect):
            raise AssertionError("not a q-th power in the perfect variables")
        terms[tuple(a // q if i in perfect else a for i, a in enumerate(ex))] = c
    return Polynomial(f.F, f.n, terms, _trusted=True)


def monomial_basis(K, e: int = 1):
    """{x^beta : 0 <= beta_i < p^e} over the non-perfect variables."""
    q = K.p**e
    free = [i for i, v in enumerate(K.variables) if v not in K.perfect_variables]
    out = []

    def rec(i, exp):
        if i == len(free):
            out.append(RationalFunction.from_polynomial(K, Polynomial.monomial(K.base, K.n, exp)))
            return
        for a in range(q):
            exp2 = list(exp)
            exp2[free[i]] = a
            rec(i + 1, tuple(exp2))

    rec(0, (0,) * K.n)
    return out


# -- the claim suite and witnesses -----------------------------------------------


@dataclass
class SplittingWitness:
    """Evidence that eta extended by the fraction rule splits the valuation ring."""

    descriptor: dict
    basis_convention: str
    log: list = dc_field(default_factory=list)
    substitution: dict | None = None

    @property
    def passed(self):
        return all(entry["passed"] for entry in self.log)

    def to_json(self):
        d = {"descriptor": self.descriptor, "basis": self.basis_convention, "log": self.log,
             "passed": self.passed}
        if self.substitution is not None:
            d["substitution"] = self.substitution
        return d


BASIS_CONVENTION = ("monomial p-basis {x^beta : 0 <= beta_i <= p-1} over all variables; "
                    "eta keeps the beta = 0 component; extension a/b -> eta(a b^(p-1)) / b^p")


def _random_poly(nu, rng, degree):
    K = nu.field
    F = K.base
    while True:
        terms = {}
        for _ in range(rng.randint(1, 6)):
            exp = [0] * K.n
            budget = rng.randint(0, degree)
            for _ in range(budget):
                exp[rng.randrange(K.n)] += 1
            terms[tuple(exp)] = rng.randrange(1, F.q)
        f = Polynomial(F, K.n, terms)
        if not f.is_zero():
            return f


def claim_suite(nu: MonomialValuation, samples: int = 200, seed: int = 0, degree: int = 6,
                pairs: int | None = None) -> SplittingWitness:
    """Run the splitting checks on sampled inputs; the witness's ``passed`` reports the outcome."""
    _require_monomialized(nu)
    rng = random.Random(seed)
    K = nu.field
    pairs = samples if pairs is None else pairs
    polys = [_random_poly(nu, rng, degree) for _ in range(samples)]
    log = []

    def record(name, count, passed, first_failure=None):
        entry = {"property": name, "samples": count, "passed": bool(passed)}
        if first_failure is not None:
            entry["first_failure"] = first_failure
        log.append(entry)

    def sweep(name, items, check):
        bad = None
        for f in items:
            if not check(f):
                bad = f
                break
        record(name, len(items), bad is None, None if bad is None else _render(K, bad))

    sweep("recomposition", polys, lambda f: p_decompose(f, 1).recompose() == f)
    sweep("inf-equation", polys, lambda f: verify_inf_eq(f, nu))
    sweep("claim: eta(a) = 0 or nu(eta(a)) >= nu(a)", polys, lambda f: verify_claim(f, nu))
    one = K.one()
    record("extend(1) = 1", 1, extend_split(one, nu) == one)

    def linear(f):
        g = _random_poly(nu, rng, 3)
        gp = RationalFunction.from_polynomial(K, g.frobenius(1))
        ff = RationalFunction.from_polynomial(K, f)
        return extend_split(gp * ff, nu) == gp * extend_split(ff, nu)

    sweep("p-linearity: extend(g^p f) = g^p extend(f)", polys[:pairs], linear)
    ring = [nu.random_ring_element(rng, degree=4, terms=4) for _ in range(pairs)]

    def lands(r):
        s = extend_split(r, nu)
        return s.is_zero() or nu.value(s).sign() >= 0

    sweep("extension lands in the valuation ring", ring, lands)

    def rep_independent(r):
        h = _random_poly(nu, rng, 2)
        r2 = RationalFunction(K, r.num * h, r.den * h, normalize=False)
        return extend_split(r2, nu) == extend_split(r, nu)

    sweep("representative independence", ring, rep_independent)
    sweep("agrees with eta on polynomials", polys[:pairs],
          lambda f: extend_split(RationalFunction.from_polynomial(K, f), nu) == eta_split(f, nu))
    return SplittingWitness(nu.to_json(), BASIS_CONVENTION, log)


def _render(K, f):
    if isinstance(f, Polynomial):
        return RationalFunction.from_polynomial(K, f).render()
    return f.render()


__all__ = [
    "FrobDecomposition",
    "p_decompose",
    "eta_split",
    "extend_split",
    "inf_eq_sides",
    "verify_inf_eq",
    "verify_claim",
    "verify_free_basis",
    "monomial_basis",
    "SplittingWitness",
    "claim_suite",
    "BASIS_CONVENTION",
]
