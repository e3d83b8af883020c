"""Monomial valuations, the Gauss extension over a perfected base, residue maps."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Mapping

from .errors import (
    DescriptorError,
    NotMonomializedError,
    PrecisionExhausted,
    ValuationError,
    ZeroValueError,
)
from .groups import (
    GroupElement,
    LexSum,
    Lex,
    PDivisible,
    Subgroup,
    ValueGroup,
)
from .lattice import determinant, hermite_rows, integer_kernel
from .poly import FieldDescriptor, Polynomial, RationalFunction, substitute

MAX_LEVEL = 12


def _as_rf(K, f):
    if isinstance(f, Polynomial):
        return RationalFunction.from_polynomial(K, f)
    return f


class MonomialValuation:
    """The monomial valuation on ``K`` with the given nonnegative variable weights.

    ``parameters`` / ``residue_vars`` record a declared monomialized partition;
    leave both empty for a plain weight valuation.  ``monomialization`` is an
    optional pair ``(mapping, target)`` where ``mapping`` sends each variable of
    ``K`` to a rational function on ``target.field`` and ``target`` is the
    valuation in the new coordinates.
    """

    def __init__(self, K: FieldDescriptor, group: ValueGroup, weights: Mapping[str, GroupElement],
                 parameters=(), residue_vars=(), monomialization=None, name: str | None = None):
        self.field = K
        self.group = group
        missing = [v for v in K.variables if v not in weights]
        if missing:
            raise DescriptorError(f"no weight for variables {missing}")
        extra = [v for v in weights if v not in K.variables]
        if extra:
            raise DescriptorError(f"weights given for unknown variables {extra}")
        self.weights = {}
        for v in K.variables:
            w = weights[v]
            if not isinstance(w, GroupElement):
                w = group.element(w)
            if w.group != group:
                raise DescriptorError(f"weight of {v} is not in the declared group")
            if w.sign() < 0:
                raise DescriptorError(f"weight of {v} is negative")
            self.weights[v] = w
        self._w = [self.weights[v] for v in K.variables]
        self.parameters = tuple(parameters)
        self.residue_vars = tuple(residue_vars)
        for v in self.parameters + self.residue_vars:
            if v not in K.variables:
                raise DescriptorError(f"unknown variable {v!r} in the partition")
        self.monomialization = monomialization
        self.name = name
        self._kernel = None
        self._mono = None
        self._value_cache = {}

    # -- values -----------------------------------------------------------

    @property
    def p(self):
        return self.field.p

    def exponent_value(self, exp) -> GroupElement:
        """The weight pairing <w, exp>."""
        exp = tuple(exp)
        hit = self._value_cache.get(exp)
        if hit is not None:
            return hit
        g = self.group.zero()
        for a, w in zip(exp, self._w):
            if a:
                g = g + w * a
        if len(self._value_cache) < 200000:
            self._value_cache[exp] = g
        return g

    def poly_value(self, f: Polynomial) -> GroupElement:
        if f.is_zero():
            raise ZeroValueError("the valuation of 0 is undefined")
        G = self.group
        best = None
        for exp in f.terms:
            v = self.exponent_value(exp)
            if best is None or G._cmp(v.coords, best.coords) < 0:
                best = v
        return best

    def value(self, f) -> GroupElement:
        if isinstance(f, Polynomial):
            return self.poly_value(f)
        if f.is_zero():
            raise ZeroValueError("the valuation of 0 is undefined")
        return self.poly_value(f.num) - self.poly_value(f.den)

    __call__ = value

    def initial_form(self, f: Polynomial) -> Polynomial:
        if isinstance(f, RationalFunction):
            g = f.as_polynomial()
            if g is None:
                raise ValuationError("initial forms are defined for polynomials")
            f = g
        v = self.poly_value(f)
        terms = {e: c for e, c in f.terms.items() if self.exponent_value(e) == v}
        return Polynomial(f.F, f.n, terms, _trusted=True)

    def in_ring(self, f) -> bool:
        return f.is_zero() or self.value(f).sign() >= 0

    # -- structure --------------------------------------------------------

    def value_group(self) -> Subgroup:
        """The subgroup generated by the weights (the value group of a monomial valuation)."""
        return Subgroup(self.group, self._w)

    def _flat_weight_rows(self):
        """Integer block coordinates of the weights (one row per variable) and the scale."""
        flats = [self.group.flat(w.coords) for w in self._w]
        den = 1
        for row in flats:
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
        return [[int(x * den) for x in row] for row in flats], den

    def kernel_basis(self):
        """Z-basis of {alpha : <w, alpha> = 0}, canonical (reversed Hermite form)."""
        if self._kernel is None:
            rows, _ = self._flat_weight_rows()
            n = self.field.n
            width = len(rows[0]) if rows else 0
            if width == 0:
                ker = [[int(i == j) for i in range(n)] for j in range(n)]
            else:
                A = [[rows[j][i] for j in range(n)] for i in range(width)]
                ker = integer_kernel(A)
            self._kernel = hermite_rows(ker, reverse=True) if ker else []
        return self._kernel

    def residue_generators(self):
        """Monomials x^alpha (alpha in the kernel basis) generating the residue field."""
        K = self.field
        out = []
        for alpha in self.kernel_basis():
            num = tuple(max(a, 0) for a in alpha)
            den = tuple(max(-a, 0) for a in alpha)
            out.append(RationalFunction(K, Polynomial.monomial(K.base, K.n, num),
                                        Polynomial.monomial(K.base, K.n, den)))
        return out

    def _residue_names(self):
        ker = self.kernel_basis()
        names = []
        for alpha in ker:
            nz = [i for i, a in enumerate(alpha) if a]
            if len(nz) == 1 and alpha[nz[0]] == 1:
                names.append(self.field.variables[nz[0]])
            else:
                names.append(None)
        if all(names) and len(set(names)) == len(names):
            return names
        if len(ker) == 1:
            return ["t"]
        return [f"t{i + 1}" for i in range(len(ker))]

    def residue_field_of(self) -> FieldDescriptor:
        """kappa_nu = F_q(one generator per kernel-basis vector)."""
        names = self._residue_names()
        gens = self.residue_generators()
        K = self.field
        label = None
        plain = [K.variables[i] for i in range(K.n)]
        if any(n not in plain for n in names):
            q = K.base.q
            inner = ", ".join(f"{n} = {g.render()}" for n, g in zip(names, gens))
            label = f"F_{q}({', '.join(names)}) with {inner}"
        return FieldDescriptor(K.base, tuple(names), generator_name=K.generator_name, label=label)

    def residue(self, r) -> RationalFunction:
        """Image of a value-0 element in the residue field."""
        K = self.field
        r = _as_rf(K, r)
        if r.is_zero():
            return self.residue_field_of().zero()
        if self.parameters or self.residue_vars:
            ok, diag = self.verify_monomialized()
            if not ok:
                raise NotMonomializedError("residue refused: declared partition is not monomialized: " + "; ".join(diag))
        v = self.value(r)
        if not v.is_zero():
            raise ValuationError(f"residue needs value 0, got {v.render()}")
        kappa = self.residue_field_of()
        ker = self.kernel_basis()
        n_in = self.initial_form(r.num)
        d_in = self.initial_form(r.den)
        ref, _ = d_in.leading()
        solver = _LatticeSolver(ker)
        m = len(ker)
        F = K.base

        def rewrite(f):
            terms = {}
            for exp, c in f.terms.items():
                diff = [a - b for a, b in zip(exp, ref)]
                coords = solver.solve(diff)
                if coords is None:
                    raise NotMonomializedError("initial-form quotient not expressible in residue generators")
                terms[tuple(coords)] = c
            return terms

        nt, dt = rewrite(n_in), rewrite(d_in)
        shift = [min([e[i] for e in list(nt) + list(dt)]) for i in range(m)] if m else []
        num = Polynomial(F, m, {tuple(a - s for a, s in zip(e, shift)): c for e, c in nt.items()})
        den = Polynomial(F, m, {tuple(a - s for a, s in zip(e, shift)): c for e, c in dt.items()})
        return RationalFunction(kappa, num, den)

    def residue_field_degree(self) -> int:
        """[kappa : kappa^p] = p^(trdeg kappa)."""
        return self.p ** len(self.kernel_basis())

    # -- monomialization --------------------------------------------------

    def verify_monomialized(self):
        """(ok, diagnostics): parameter weights freely generate the group, residue weights vanish."""
        if self._mono is not None:
            return self._mono
        diag = []
        K = self.field
        if not self.parameters and not self.residue_vars:
            diag.append("no parameter/residue partition declared")
        covered = set(self.parameters) | set(self.residue_vars)
        if set(self.parameters) & set(self.residue_vars):
            diag.append("a variable is both parameter and residue variable")
        rest = [v for v in K.variables if v not in covered]
        if rest:
            diag.append(f"variables outside the partition: {rest}")
        for v in self.residue_vars:
            if not self.weights[v].is_zero():
                diag.append(f"residue variable {v} has nonzero weight {self.weights[v].render()}")
        if K.perfect_variables:
            diag.append("field has perfected variables")
        G = self.group
        if not G.finitely_generated:
            diag.append(f"group {G.describe()} is not finitely generated")
        else:
            width = sum(2 if b[0] == "emb" else 1 for b in G.blocks())
            d = len(self.parameters)
            if d != width:
                diag.append(f"{d} parameter weights for a group of rank {width}")
            else:
                rows = [[int(x) for x in G.flat(self.weights[v].coords)] for v in self.parameters]
                det = determinant(rows) if rows else 1
                if abs(det) != 1:
                    diag.append(f"parameter weights span a sublattice of index {abs(det)}")
        self._mono = (not diag, diag)
        return self._mono

    @property
    def monomialized(self) -> bool:
        return self.verify_monomialized()[0]

    def check_monomialization(self, samples: int = 50, seed: int = 0):
        """Consistency of the declared substitution: values agree on variables and on samples.

        Returns (ok, diagnostics).
        """
        if self.monomialization is None:
            return False, ["no monomialization declared"]
        mapping, target = self.monomialization
        diag = []
        if target.group != self.group:
            diag.append("target valuation uses a different group")
            return False, diag
        ok_t, d_t = target.verify_monomialized()
        if not ok_t:
            diag.extend(f"target: {x}" for x in d_t)
        for v in self.field.variables:
            img = mapping[v]
            if img.is_zero() or target.value(img) != self.weights[v]:
                diag.append(f"image of {v} has the wrong value")
        rng = random.Random(seed)
        for _ in range(samples):
            f = self.random_polynomial(rng)
            if f.is_zero():
                continue
            fi = substitute(RationalFunction.from_polynomial(self.field, f), mapping, target.field)
            if fi.is_zero() or target.value(fi) != self.poly_value(f):
                diag.append(f"value of {render(self.field, f)} not preserved")
                break
        return not diag, diag

    # -- centers / sampling -----------------------------------------------

    def canonical_center(self):
        """F_q[x]_(positive-weight variables): (dimension, residue field of the center)."""
        K = self.field
        pos = [v for v in K.variables if not self.weights[v].is_zero()]
        zero = [v for v in K.variables if self.weights[v].is_zero()]
        return len(pos), FieldDescriptor(K.base, tuple(zero), generator_name=K.generator_name)

    def random_polynomial(self, rng: random.Random, degree: int = 4, terms: int = 5) -> Polynomial:
        K = self.field
        F = K.base
        out = {}
        for _ in range(rng.randint(1, terms)):
            exp = [0] * K.n
            for _ in range(rng.randint(0, degree)):
                exp[rng.randrange(K.n)] += 1 if K.n else 0
            out[tuple(exp)] = rng.randrange(1, F.q)
        return Polynomial(F, K.n, out)

    def random_ring_element(self, rng: random.Random, degree: int = 4, terms: int = 4):
        """a/b with nu(a) >= nu(b), a and b random polynomials."""
        while True:
            a = self.random_polynomial(rng, degree, terms)
            b = self.random_polynomial(rng, degree, terms)
            if a.is_zero() or b.is_zero():
                continue
            if self.group._cmp(self.poly_value(a).coords, self.poly_value(b).coords) >= 0:
                return RationalFunction(self.field, a, b)

    def to_json(self):
        d = {
            "kind": "monomial",
            **self.field.to_json(),
            "group": self.group.to_json(),
            "weights": {v: w.to_json() for v, w in self.weights.items()},
        }
        if self.parameters or self.residue_vars:
            d["parameters"] = list(self.parameters)
            d["residue_vars"] = list(self.residue_vars)
        if self.monomialization is not None:
            mapping, target = self.monomialization
            d["monomialization"] = {
                "map": {v: mapping[v].render() for v in self.field.variables},
                "valuation": target.to_json(),
            }
        return d

    def describe(self):
        ws = ", ".join(f"{v}:{w.render()}" for v, w in self.weights.items())
        return f"monomial valuation on {self.field.describe()} with weights {{{ws}}} in {self.group.describe()}"


def render(K, f):
    return RationalFunction.from_polynomial(K, f).render() if isinstance(f, Polynomial) else f.render()


class _LatticeSolver:
    """Integer coordinates of a vector in the row lattice of an echelon basis."""

    def __init__(self, basis):
        self.basis = [list(r) for r in basis]

    def solve(self, vec):
        vec = [Fraction(x) for x in vec]
        coords = []
        # reversed Hermite form: pivots are the last nonzero entries, strictly decreasing
        for row in self.basis:
            pc = max(i for i, a in enumerate(row) if a)
            c = vec[pc] / row[pc]
            if c.denominator != 1:
                return None
            c = int(c)
            coords.append(c)
            if c:
                vec = [a - c * b for a, b in zip(vec, row)]
        if any(vec):
            return None
        return coords


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


# -- Gauss extension over the perfected base F_p(s^(1/p^inf)) ----------------


class ValuedBaseField:
    """F_p(u) with u = s^(1/p^level) and the s-adic valuation scaled into Z[1/p]."""

    def __init__(self, p: int, level: int = 0):
        if level < 0 or level > MAX_LEVEL:
            raise PrecisionExhausted(f"perfection level {level} outside [0, {MAX_LEVEL}]", limit=MAX_LEVEL)
        self.p = p
        self.level = level
        self.group = PDivisible(p)

    def value_of_u(self) -> GroupElement:
        return self.group.element((1, self.level))

    def value(self, f: RationalFunction, index: int = 0) -> GroupElement:
        """s-adic value of a rational function of the variable at position ``index``."""

        def order(poly):
            return min(e[index] for e in poly.terms)

        if f.is_zero():
            raise ZeroValueError("the valuation of 0 is undefined")
        k = order(f.num) - order(f.den)
        return self.group.element((k, self.level))

    def escalate(self, steps: int = 1) -> "ValuedBaseField":
        if self.level + steps > MAX_LEVEL:
            raise PrecisionExhausted(
                f"perfection level capped at {MAX_LEVEL} (requested {self.level + steps})", limit=MAX_LEVEL
            )
        return ValuedBaseField(self.p, self.level + steps)


class GaussValuation:
    """w(sum a_i X^i) = lex-inf of (nu(a_i), i) or (i, nu(a_i)) on L(X).

    Elements at perfection level e are rational functions of ``u`` (= s^(1/p^e))
    and ``x``.  Internally this is a monomial valuation on F_p(u, x) with u
    declared perfect, so [K : K^p] = p.
    """

    VARIANTS = ("group_first", "z_first")

    def __init__(self, p: int, variant: str = "group_first", level: int = 0):
        if variant not in self.VARIANTS:
            raise DescriptorError(f"unknown Gauss variant {variant!r}")
        self.base = ValuedBaseField(p, level)
        self.variant = variant
        self.p = p
        from .gf import field

        self.field = FieldDescriptor(field(p), ("u", "x"), perfect_variables=("u",),
                                     label=f"F_{p}(s^(1/p^inf))(X) at level {level}, u = s^(1/{p}^{level})")
        pd, z = PDivisible(p), Lex(1)
        if variant == "group_first":
            self.group = LexSum([pd, z])
            wu = self.group.element([[1, level], [0]])
            wx = self.group.element([[0, 0], [1]])
        else:
            self.group = LexSum([z, pd])
            wu = self.group.element([[0], [1, level]])
            wx = self.group.element([[1], [0, 0]])
        self.monomial = MonomialValuation(self.field, self.group, {"u": wu, "x": wx})

    @property
    def level(self):
        return self.base.level

    def escalate(self, steps: int = 1) -> "GaussValuation":
        b = self.base.escalate(steps)
        return GaussValuation(self.p, self.variant, b.level)

    def lift(self, f: RationalFunction, steps: int = 1) -> RationalFunction:
        """The same element written at level + steps (u -> u'^(p^steps))."""
        target = self.escalate(steps)
        q = self.p**steps
        return RationalFunction(target.field, _scale_var(f.num, 0, q), _scale_var(f.den, 0, q))

    def value(self, f) -> GroupElement:
        return self.monomial.value(f)

    __call__ = value

    def parse(self, text: str) -> RationalFunction:
        return self.field.parse(text)

    def residue_field_of(self) -> FieldDescriptor:
        return FieldDescriptor(self.field.base, ())

    def random_polynomial(self, rng, degree=4, terms=5):
        return self.monomial.random_polynomial(rng, degree, terms)

    def random_ring_element(self, rng, degree=4, terms=4):
        return self.monomial.random_ring_element(rng, degree, terms)

    def to_json(self):
        return {"kind": "gauss", "variant": self.variant, "p": self.p, "level": self.level}

    def describe(self):
        order = "Gamma (+) Z" if self.variant == "group_first" else "Z (+) Gamma"
        return f"Gauss valuation on L(X), L = F_{self.p}(s^(1/p^inf)), value group {order} (lex)"


def _scale_var(f: Polynomial, i: int, q: int) -> Polynomial:
    terms = {}
    for e, c in f.terms.items():
        e2 = list(e)
        e2[i] *= q
        terms[tuple(e2)] = c
    return Polynomial(f.F, f.n, terms, _trusted=True)


def gauss_value(f, w: GaussValuation) -> GroupElement:
    return w.value(f)


def monomial_value(f, nu: MonomialValuation) -> GroupElement:
    return nu.value(f)


def initial_form(f, nu: MonomialValuation) -> Polynomial:
    return nu.initial_form(f)


def residue(r, nu: MonomialValuation) -> RationalFunction:
    return nu.residue(r)


def residue_field_of(nu: MonomialValuation) -> FieldDescriptor:
    return nu.residue_field_of()


def verify_monomialized(nu: MonomialValuation):
    return nu.verify_monomialized()


def lex_valuation(p: int, n: int, k: int = 1, names=None) -> MonomialValuation:
    """nu_lex on F_q(x1..xn): x_i -> e_i in Z^n (lex)."""
    from .gf import field

    names = tuple(names or (f"x{i + 1}" for i in range(n)))
    K = FieldDescriptor(field(p, k), names)
    G = Lex(n)
    return MonomialValuation(K, G, {v: G.basis(i) for i, v in enumerate(names)},
                             parameters=names, residue_vars=(), name=f"lex{n}")


__all__ = [
    "MonomialValuation",
    "GaussValuation",
    "ValuedBaseField",
    "gauss_value",
    "monomial_value",
    "initial_form",
    "residue",
    "residue_field_of",
    "verify_monomialized",
    "lex_valuation",
    "MAX_LEVEL",
]
