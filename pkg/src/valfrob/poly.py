"""Sparse multivariate polynomials and rational functions over a GroundField."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ArityError, ZeroDenominatorError
from .gf import GroundField

Exponent = tuple  # tuple[int, ...]


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("F", "n", "terms", "_hash")

    def __init__(self, F: GroundField, n: int, terms: Mapping[Exponent, int] | None = None,
                 *, _trusted: bool = False):
        self.F = F
        self.n = n
        if terms is None:
            terms = {}
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise ArityError(f"exponent {exp} does not have arity {n}")
                if any(a < 0 for a in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c %= F.q
                if c:
                    clean[exp] = c
            self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, F, n):
        return cls(F, n, {}, _trusted=True)

    @classmethod
    def constant(cls, F, n, c):
        c %= F.q
        return cls(F, n, {(0,) * n: c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, F, n):
        return cls.constant(F, n, 1)

    @classmethod
    def monomial(cls, F, n, exp, c=1):
        return cls(F, n, {tuple(exp): c})

    @classmethod
    def variable(cls, F, n, i):
        e = [0] * n
        e[i] = 1
        return cls(F, n, {tuple(e): 1}, _trusted=True)

    # -- queries ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and (0,) * self.n in self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_term(self):
        return self.terms.get((0,) * self.n, 0)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self):
        """Leading (exponent, coefficient) in lex order with x_1 > x_2 > ..."""
        exp = max(self.terms)
        return exp, self.terms[exp]

    def __len__(self):
        return len(self.terms)

    def _check(self, other):
        if self.n != other.n or self.F != other.F:
            raise ArityError("polynomials over different rings")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.F, self.n, other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.F
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(F, self.n, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.F
        return Polynomial(F, self.n, {e: F.neg(c) for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.F
        if len(self.terms) > len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out: dict = {}
        if F.k == 1:
            p = F.p
            for eb, cb in b.items():
                for ea, ca in a.items():
                    e = tuple(x + y for x, y in zip(ea, eb))
                    out[e] = (out.get(e, 0) + ca * cb) % p
            out = {e: c for e, c in out.items() if c}
        else:
            for eb, cb in b.items():
                for ea, ca in a.items():
                    e = tuple(x + y for x, y in zip(ea, eb))
                    out[e] = F.add(out.get(e, 0), F.mul(ca, cb))
            out = {e: c for e, c in out.items() if c}
        return Polynomial(F, self.n, out, _trusted=True)

    __rmul__ = __mul__

    def scale(self, c):
        F = self.F
        c %= F.q
        if not c:
            return Polynomial.zero(F, self.n)
        return Polynomial(F, self.n, {e: F.mul(v, c) for e, v in self.terms.items()}, _trusted=True)

    def shift(self, exp):
        """Multiply by the monomial x^exp."""
        return Polynomial(
            self.F, self.n,
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()},
            _trusted=True,
        )

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = Polynomial.one(self.F, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius(self, e=1):
        """f^(p^e): exponents scale by p^e, coefficients are raised to p^e."""
        F = self.F
        s = F.p**e
        return Polynomial(
            F, self.n,
            {tuple(a * s for a in exp): F.frobenius(c, e) for exp, c in self.terms.items()},
            _trusted=True,
        )

    def divmod_exact(self, other):
        """Return ``self / other`` if the division is exact, else None.

        Single-divisor division in lex order; the remainder is zero exactly when
        ``other`` divides ``self``.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDenominatorError("division by the zero polynomial")
        F = self.F
        lead_e, lead_c = other.leading()
        inv = F.inv(lead_c)
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem)
            if any(a < b for a, b in zip(e, lead_e)):
                return None
            c = F.mul(rem[e], inv)
            shift = tuple(a - b for a, b in zip(e, lead_e))
            quot[shift] = c
            for oe, oc in other.terms.items():
                te = tuple(a + b for a, b in zip(oe, shift))
                v = F.sub(rem.get(te, 0), F.mul(c, oc))
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return Polynomial(F, self.n, quot, _trusted=True)

    def monomial_content(self):
        """Componentwise minimum exponent over the support."""
        if not self.terms:
            return (0,) * self.n
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, a in enumerate(e):
                if a < m[i]:
                    m[i] = a
        return tuple(m)

    def evaluate(self, images, one, zero=None):
        """Image of self under x_i -> images[i] in a commutative ring.

        Coefficients act through ``target * int``, so the target must accept
        ints as encoded ground-field elements (as Polynomial and
        RationalFunction do).
        """
        cache = [dict() for _ in range(self.n)]

        def power(i, a):
            if a == 0:
                return one
            c = cache[i]
            if a not in c:
                if a == 1:
                    c[a] = images[i]
                else:
                    h = a // 2
                    v = power(i, h) * power(i, h)
                    if a % 2:
                        v = v * images[i]
                    c[a] = v
            return c[a]

        total = zero
        for e, coef in sorted(self.terms.items()):
            term = None
            for i, a in enumerate(e):
                if a:
                    pw = power(i, a)
                    term = pw if term is None else term * pw
            if term is None:
                term = one
            term = term * coef if coef != 1 else term
            total = term if total is None else total + term
        if total is None:
            return zero if zero is not None else one * 0
        return total

    # -- equality / hashing -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.F, self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.F == other.F and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.F, self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.F!r}, {self.n}, {self.terms!r})"

    def render(self, names, gen="g"):
        return render_polynomial(self, names, gen)


def _term_key(e):
    return (-sum(e), tuple(-a for a in e))


def render_polynomial(f: Polynomial, names, gen="g") -> str:
    """Canonical rendering: monomials by descending total degree, then lex."""
    if f.is_zero():
        return "0"
    F = f.F
    pieces = []
    for e in sorted(f.terms, key=_term_key):
        c = f.terms[e]
        factors = []
        for name, a in zip(names, e):
            if a == 1:
                factors.append(name)
            elif a > 1:
                factors.append(f"{name}^{a}")
        mono = "*".join(factors)
        sign = ""
        if F.k == 1:
            # print p-1 as a leading minus for readability
            if c != 1 and F.p > 2 and c == F.p - 1:
                sign, c = "-", 1
            cs = str(c)
        else:
            cs = F.render(c, gen)
            if " + " in cs:
                cs = f"({cs})"
        if not mono:
            body = cs
        elif c == 1:
            body = mono
        else:
            body = f"{cs}*{mono}"
        pieces.append((sign, body))
    out = ""
    for i, (sign, body) in enumerate(pieces):
        if i == 0:
            out = f"-{body}" if sign else body
        else:
            out += f" - {body}" if sign else f" + {body}"
    return out


@dataclass(frozen=True)
class FieldDescriptor:
    """A rational function field F_q(variables), optionally (partly) perfected.

    ``perfect_variables`` lists generators adjoined together with all their
    p-power roots (e.g. the base of a Gauss extension); ``perfected`` marks the
    whole field as perfect.  ``label`` only affects display.
    """

    base: GroundField
    variables: tuple = ()
    perfected: bool = False
    perfect_variables: tuple = ()
    generator_name: str = "g"
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "perfect_variables", tuple(self.perfect_variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        if not set(self.perfect_variables) <= set(self.variables):
            raise ValueError("perfect_variables must be among the variables")
        if self.base.k > 1 and self.generator_name in self.variables:
            raise ValueError(f"variable name {self.generator_name!r} clashes with the field generator")

    @property
    def p(self):
        return self.base.p

    @property
    def n(self):
        return len(self.variables)

    @property
    def transcendence_degree(self):
        return len(self.variables)

    def degree_over_pth_powers(self):
        """[K : K^p] (the base field is perfect)."""
        if self.perfected:
            return 1
        return self.p ** (len(self.variables) - len(self.perfect_variables))

    def index(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(name) from None

    def var(self, name) -> "RationalFunction":
        return RationalFunction.from_polynomial(self, Polynomial.variable(self.base, self.n, self.index(name)))

    def gens(self):
        return [self.var(v) for v in self.variables]

    def const(self, c) -> "RationalFunction":
        return RationalFunction.from_polynomial(self, Polynomial.constant(self.base, self.n, c))

    def zero(self):
        return self.const(0)

    def one(self):
        return self.const(1)

    def poly(self, terms) -> Polynomial:
        return Polynomial(self.base, self.n, terms)

    def rf(self, num, den=None) -> "RationalFunction":
        if den is None:
            den = Polynomial.one(self.base, self.n)
        return RationalFunction(self, num, den)

    def parse(self, text) -> "RationalFunction":
        from .parse import rf_parse

        return rf_parse(text, self)

    def describe(self):
        if self.label:
            return self.label
        base = f"F_{self.base.q}"
        if not self.variables:
            return base
        parts = []
        for v in self.variables:
            parts.append(f"{v}^(1/p^inf)" if v in self.perfect_variables else v)
        s = f"{base}({', '.join(parts)})"
        return f"perfection of {s}" if self.perfected else s

    def to_json(self):
        d = {"p": self.base.p, "k": self.base.k, "variables": list(self.variables)}
        if self.perfected:
            d["perfected"] = True
        if self.perfect_variables:
            d["perfect_variables"] = list(self.perfect_variables)
        if self.label:
            d["label"] = self.label
        return d

    @classmethod
    def from_json(cls, d):
        from .gf import field

        return cls(
            field(int(d["p"]), int(d.get("k", 1))),
            tuple(d.get("variables", ())),
            perfected=bool(d.get("perfected", False)),
            perfect_variables=tuple(d.get("perfect_variables", ())),
            generator_name=d.get("generator", "g"),
            label=d.get("label"),
        )


class RationalFunction:
    """num/den with den != 0; equality by cross-multiplication.

    Representatives are lightly normalised (common monomial factor removed,
    denominator made monic in lex order) but no GCD is taken.
    """

    __slots__ = ("K", "num", "den")

    def __init__(self, K: FieldDescriptor, num: Polynomial, den: Polynomial, *, normalize=True):
        if den.is_zero():
            raise ZeroDenominatorError("rational function with zero denominator")
        if num.n != K.n or den.n != K.n:
            raise ArityError("arity does not match the field")
        if normalize:
            num, den = _normalize(num, den)
        self.K = K
        self.num = num
        self.den = den

    @classmethod
    def from_polynomial(cls, K, f):
        return cls(K, f, Polynomial.one(K.base, K.n), normalize=False)

    # -- helpers ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.K.n != self.K.n or other.K.base != self.K.base:
                raise ArityError("rational functions over different fields")
            return other
        if isinstance(other, int):
            return self.K.const(other)
        if isinstance(other, Polynomial):
            return RationalFunction.from_polynomial(self.K, other)
        return NotImplemented

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def as_polynomial(self):
        """The polynomial equal to self, or None if self is not a polynomial."""
        if self.den.is_constant():
            return self.num.scale(self.K.base.inv(self.den.constant_term()))
        return self.num.divmod_exact(self.den)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.K, self.num + other.num, self.den)
        return RationalFunction(self.K, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.K, -self.num, self.den, normalize=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.K, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDenominatorError("inverse of zero")
        return RationalFunction(self.K, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDenominatorError("division by zero")
        return RationalFunction(self.K, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.K, self.num**k, self.den**k)

    def frobenius(self, e=1):
        return RationalFunction(self.K, self.num.frobenius(e), self.den.frobenius(e), normalize=False)

    # -- equality ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Polynomial)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return rf_eq(self, other)

    __hash__ = None

    def render(self):
        names = self.K.variables
        gen = self.K.generator_name
        n = render_polynomial(self.num, names, gen)
        if self.den.is_constant() and self.den.constant_term() == 1:
            return n
        d = render_polynomial(self.den, names, gen)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1 or not self.den.is_monomial() or "*" in d or " " in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RationalFunction({self.render()!r})"


def _normalize(num: Polynomial, den: Polynomial):
    F = num.F
    if num.is_zero():
        return num, Polynomial.one(F, num.n)
    mn = num.monomial_content()
    md = den.monomial_content()
    common = tuple(min(a, b) for a, b in zip(mn, md))
    if any(common):
        neg = tuple(-a for a in common)
        num = num.shift(neg)
        den = den.shift(neg)
    _, lc = den.leading()
    if lc != 1:
        inv = F.inv(lc)
        num = num.scale(inv)
        den = den.scale(inv)
    if len(den) > 1 and len(num) >= len(den):
        q = num.divmod_exact(den)
        if q is not None:
            return q, Polynomial.one(F, num.n)
    return num, den


def rf_eq(a: RationalFunction, b: RationalFunction) -> bool:
    """Semantic equality: a.num*b.den == b.num*a.den."""
    if a.K.n != b.K.n or a.K.base != b.K.base:
        raise ArityError("rational functions over different fields")
    if a.den == b.den:
        return a.num == b.num
    return a.num * b.den == b.num * a.den


def frobenius_power(f: RationalFunction, e: int = 1) -> RationalFunction:
    if e < 1:
        raise ValueError("iteration count must be >= 1")
    return f.frobenius(e)


def substitute(f: RationalFunction, mapping: Mapping[str, RationalFunction], target: FieldDescriptor):
    """Image of ``f`` under the field map sending each variable to ``mapping[var]``."""
    K = f.K
    missing = [v for v in K.variables if v not in mapping]
    if missing:
        raise KeyError(f"no image for variables {missing}")
    images = [mapping[v] for v in K.variables]
    for im in images:
        if im.K.base != target.base or im.K.n != target.n:
            raise ArityError("images must live in the target field")
    one = target.one()
    zero = target.zero()
    num = f.num.evaluate(images, one, zero)
    den = f.den.evaluate(images, one, zero)
    if den.is_zero():
        raise ZeroDenominatorError("substitution sends the denominator to zero")
    return num / den


def iter_monomials(n: int, max_degree: int) -> Iterable[tuple]:
    """All exponent vectors of total degree <= max_degree."""
    if n == 0:
        yield ()
        return
    for a in range(max_degree + 1):
        for rest in iter_monomials(n - 1, max_degree - a):
            yield (a,) + rest
