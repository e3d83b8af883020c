"""Lazy power series over F_p, the series embedding of F_p(X, Y), Hahn series.

Series coefficients live in the prime field (int64 arrays with entries in
[0, p)); the dense work is done by the kernels in ``_kernels``.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable

import numpy as np

from . import _kernels as kern
from .errors import DescriptorError, PrecisionExhausted, ZeroValueError
from .gf import is_prime
from .groups import GroupElement, PDivisible
from .poly import Polynomial, RationalFunction

BLOCK = 256
DEFAULT_SEED = 20240607
DEFAULT_PRECISION = 256
HARD_LIMIT = 16384


class LazySeries:
    """A power series in t given by ``compute(n) -> first n coefficients``.

    The longest prefix computed so far is memoized under a lock.
    """

    def __init__(self, p: int, compute: Callable[[int], np.ndarray], label: str = "series"):
        if not is_prime(p):
            raise DescriptorError("series are supported over prime fields only")
        self.p = p
        self._compute = compute
        self._memo = np.zeros(0, dtype=np.int64)
        self._lock = threading.Lock()
        self.label = label

    def coeffs(self, n: int) -> np.ndarray:
        with self._lock:
            if self._memo.size < n:
                self._memo = np.asarray(self._compute(n), dtype=np.int64)[:n] % self.p
            return self._memo[:n].copy()

    def __getitem__(self, i: int) -> int:
        return int(self.coeffs(i + 1)[i])

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_coeffs(cls, p: int, coeffs, label="poly"):
        base = np.asarray(list(coeffs), dtype=np.int64) % p

        def compute(n):
            out = np.zeros(n, dtype=np.int64)
            m = min(n, base.size)
            out[:m] = base[:m]
            return out

        return cls(p, compute, label)

    @classmethod
    def monomial(cls, p: int, k: int, c: int = 1):
        return cls.from_coeffs(p, [0] * k + [c % p], label=f"t^{k}")

    @classmethod
    def zero(cls, p: int):
        return cls(p, lambda n: np.zeros(n, dtype=np.int64), "0")

    @classmethod
    def seeded(cls, p: int, seed: int = DEFAULT_SEED):
        """The pseudorandom stream q(t): q_0 = 0, q_1 != 0, blocks of 256 from numpy's PCG64."""

        def block(b):
            rng = np.random.default_rng([int(seed), b])
            return rng.integers(0, p, size=BLOCK, dtype=np.int64)

        def compute(n):
            nb = (n + BLOCK - 1) // BLOCK
            out = np.concatenate([block(b) for b in range(nb)])[:n] if nb else np.zeros(0, np.int64)
            if n > 0:
                out[0] = 0
            if n > 1 and out[1] == 0:
                out[1] = 1
            return out

        return cls(p, compute, f"q_seed{seed}")

    # -- arithmetic -------------------------------------------------------

    def _same(self, other):
        if not isinstance(other, LazySeries) or other.p != self.p:
            raise TypeError("series over different fields")
        return other

    def __add__(self, other):
        o = self._same(other)
        return LazySeries(self.p, lambda n: (self.coeffs(n) + o.coeffs(n)) % self.p, "sum")

    def __sub__(self, other):
        o = self._same(other)
        return LazySeries(self.p, lambda n: (self.coeffs(n) - o.coeffs(n)) % self.p, "diff")

    def __neg__(self):
        return LazySeries(self.p, lambda n: (-self.coeffs(n)) % self.p, "neg")

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.p
            return LazySeries(self.p, lambda n: (self.coeffs(n) * c) % self.p, "scaled")
        o = self._same(other)
        return LazySeries(self.p, lambda n: kern.conv_trunc(self.coeffs(n), o.coeffs(n), n, self.p), "prod")

    __rmul__ = __mul__

    def shift(self, k: int):
        """t^k * self."""

        def compute(n):
            out = np.zeros(n, dtype=np.int64)
            if n > k:
                out[k:] = self.coeffs(n - k)
            return out

        return LazySeries(self.p, compute, "shift")

    def frobenius(self):
        """self^p (coefficientwise: c^p = c over F_p)."""
        p = self.p
        return LazySeries(p, lambda n: kern.frobenius(self.coeffs((n + p - 1) // p), p, n), "frob")

    def truncate(self, n: int):
        return LazySeries.from_coeffs(self.p, self.coeffs(n))

    def equal_to(self, other, n: int) -> bool:
        return bool(np.array_equal(self.coeffs(n), self._same(other).coeffs(n)))

    def __repr__(self):
        return f"<LazySeries {self.label} over F_{self.p}>"


def series_ord(x: LazySeries, cap: int = DEFAULT_PRECISION) -> int:
    """Least index with a nonzero coefficient, searched below ``cap``."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    i = kern.first_nonzero(x.coeffs(cap))
    if i < 0:
        raise PrecisionExhausted(f"all coefficients below {cap} vanish", limit=cap)
    return i


def series_split(x: LazySeries) -> LazySeries:
    """Keep coefficients at exponents divisible by p, take p-th roots, divide exponents by p."""
    p = x.p
    # p-th roots are the identity on F_p
    return LazySeries(p, lambda n: kern.split(x.coeffs(n * p), p)[:n], "split")


def series_frobenius(x: LazySeries) -> LazySeries:
    return x.frobenius()


class SeriesEmbedding:
    """F_p(X, Y) -> F_p((t)) with X -> t and Y -> t * q(t) for the seeded q."""

    def __init__(self, p: int, seed: int = DEFAULT_SEED, precision: int = DEFAULT_PRECISION,
                 limit: int = HARD_LIMIT, variables=("x", "y")):
        if precision < 1:
            raise ValueError("precision must be >= 1")
        self.p = p
        self.seed = int(seed)
        self.precision = int(precision)
        self.limit = int(max(limit, precision))
        self.variables = tuple(variables)
        self.q = LazySeries.seeded(p, self.seed)
        self.images = (LazySeries.monomial(p, 1), self.q.shift(1))

    def image_coeffs(self, f: Polynomial, n: int) -> np.ndarray:
        """First n coefficients of f(t, t q(t))."""
        if f.n != 2:
            raise DescriptorError("the series embedding is defined on F_p(X, Y)")
        p = self.p
        ymax = max(e[1] for e in f.terms)
        y = self.images[1].coeffs(n)
        powers = [np.zeros(n, dtype=np.int64)]
        powers[0][0] = 1 % p if n else 0
        for _ in range(ymax):
            powers.append(kern.conv_trunc(powers[-1], y, n, p))
        out = np.zeros(n, dtype=np.int64)
        for (a, b), c in f.terms.items():
            if a >= n:
                continue
            if f.F.k != 1:
                raise DescriptorError("series embedding needs a prime ground field")
            out[a:] = (out[a:] + c * powers[b][: n - a]) % p
        return out

    def poly_ord(self, f: Polynomial, cap: int | None = None):
        """(order, cap used), doubling the cap from the configured precision."""
        if f.is_zero():
            raise ZeroValueError("the valuation of 0 is undefined")
        n = cap or self.precision
        while True:
            i = kern.first_nonzero(self.image_coeffs(f, n))
            if i >= 0:
                return i, n
            if n >= self.limit:
                raise PrecisionExhausted(
                    f"image vanishes below t^{n}; escalation limit {self.limit} reached", limit=self.limit
                )
            n = min(2 * n, self.limit)

    def value(self, f, cap: int | None = None) -> int:
        if isinstance(f, Polynomial):
            return self.poly_ord(f, cap)[0]
        if f.is_zero():
            raise ZeroValueError("the valuation of 0 is undefined")
        return self.poly_ord(f.num, cap)[0] - self.poly_ord(f.den, cap)[0]

    __call__ = value

    def to_json(self):
        return {"kind": "series", "p": self.p, "seed": self.seed, "precision": self.precision}


def embed_value(f, E: SeriesEmbedding, cap: int | None = None) -> int:
    return E.value(f, cap)


# -- Hahn series --------------------------------------------------------------


class HahnSeries:
    """A finitely supported Hahn series over F_p with exponents in Z[1/p]."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms=None):
        self.p = p
        clean = {}
        for e, c in (terms or {}).items():
            c %= p
            if c:
                clean[Fraction(e)] = c
        self.terms = clean

    def support(self):
        """Exponent/coefficient pairs in strictly increasing exponent order."""
        for e in sorted(self.terms):
            yield e, self.terms[e]

    def least(self):
        return min(self.terms) if self.terms else None

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = (t.get(e, 0) + c) % self.p
        return HahnSeries(self.p, t)

    def __neg__(self):
        return HahnSeries(self.p, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def mul(self, other, bound=None):
        """Product, dropping exponents >= bound (exponents are nonnegative here)."""
        t = {}
        p = self.p
        for e1, c1 in self.terms.items():
            if bound is not None and e1 >= bound:
                continue
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if bound is not None and e >= bound:
                    continue
                t[e] = (t.get(e, 0) + c1 * c2) % p
        return HahnSeries(p, t)

    __mul__ = mul

    def scale(self, c):
        return HahnSeries(self.p, {e: c * v for e, v in self.terms.items()})

    def shift(self, a):
        return HahnSeries(self.p, {e + a: c for e, c in self.terms.items()})

    def truncate(self, bound):
        return HahnSeries(self.p, {e: c for e, c in self.terms.items() if e < bound})

    def __eq__(self, other):
        return isinstance(other, HahnSeries) and self.p == other.p and self.terms == other.terms

    def __repr__(self):
        parts = [f"{c}*t^{e}" for e, c in self.support()]
        return "HahnSeries(" + (" + ".join(parts) or "0") + ")"


MAX_HAHN_DEPTH = 16


def hahn_y(p: int, depth: int) -> HahnSeries:
    """sum_{i=1}^{depth} t^(1 - p^-i)."""
    return HahnSeries(p, {1 - Fraction(1, p**i): 1 for i in range(1, depth + 1)})


def reliability_bound(f: Polynomial, p: int, depth: int) -> Fraction:
    """Exponents below this bound agree between f(t, Y) and f(t, Y_depth)."""
    tail = 1 - Fraction(1, p ** (depth + 1))
    vy = 1 - Fraction(1, p)
    bounds = [a + (b - 1) * vy + tail for (a, b) in f.terms if b >= 1]
    return min(bounds) if bounds else None


def hahn_image(f: Polynomial, p: int, depth: int, bound) -> HahnSeries:
    """f(t, Y_depth) with exponents >= bound dropped."""
    Y = hahn_y(p, depth)
    ymax = max((e[1] for e in f.terms), default=0)
    powers = [HahnSeries(p, {0: 1})]
    for _ in range(ymax):
        powers.append(powers[-1].mul(Y, bound))
    out = HahnSeries(p)
    for (a, b), c in f.terms.items():
        out = out + powers[b].shift(a).scale(c)
    return out.truncate(bound) if bound is not None else out


def hahn_embed_value(f, p: int, cap=None) -> GroupElement:
    """Least exponent of f(t, sum_i t^(1 - p^-i)) as an element of Z[1/p].

    The infinite sum is replaced by its depth-I truncation; an exponent is
    reported only below the bound where the truncation is provably exact.
    """
    if isinstance(f, RationalFunction):
        g = f.as_polynomial()
        if g is None:
            raise DescriptorError("hahn_embed_value takes polynomials")
        f = g
    if f.n != 2:
        raise DescriptorError("the Hahn embedding is defined on F_p(X, Y)")
    if f.is_zero():
        raise ZeroValueError("the valuation of 0 is undefined")
    G = PDivisible(p)
    cap = Fraction(2 * p) if cap is None else Fraction(cap)
    for depth in range(1, MAX_HAHN_DEPTH + 1):
        r = reliability_bound(f, p, depth)
        bound = cap if r is None else min(r, cap)
        img = hahn_image(f, p, depth, bound)
        lo = img.least()
        if lo is not None:
            return G.element(lo)
        if r is None or r >= cap:
            break
    raise PrecisionExhausted(f"no nonzero exponent of the image below {cap}", limit=cap)
