"""Finite ground fields F_q, q = p^k.

Elements are plain ints in ``range(q)``.  For k > 1 the int is the base-p
digit vector of the element written in the power basis of a fixed generator
``g`` (the class of the indeterminate modulo a shipped Conway polynomial), so
``g`` itself is encoded as ``p``.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import FieldError

# Conway polynomials, low coefficient first, leading 1 omitted.
CONWAY = {
    (2, 2): (1, 1),
    (2, 3): (1, 1, 0),
    (2, 4): (1, 1, 0, 0),
    (2, 5): (1, 0, 1, 0, 0),
    (2, 6): (1, 1, 0, 1, 1, 0),
    (3, 2): (2, 2),
    (3, 3): (1, 2, 0),
    (3, 4): (2, 0, 0, 2),
    (5, 2): (2, 4),
    (5, 3): (3, 3, 0),
    (5, 4): (2, 4, 4, 0),
    (7, 2): (3, 6),
    (7, 3): (4, 0, 6),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class GroundField:
    """The finite field with ``p**k`` elements.

    Prime fields use modular arithmetic directly; extension fields are backed
    by log/antilog tables and a digitwise addition table.
    """

    __slots__ = ("p", "k", "q", "_add", "_neg", "_log", "_exp", "modulus")

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if k > 1 and (p, k) not in CONWAY:
            raise FieldError(f"no shipped defining polynomial for F_{p}^{k}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = CONWAY.get((p, k))
        if k > 1:
            self._build_tables()

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds):
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        digits = [self._digits(a) for a in range(q)]
        self._add = [
            [self._undigits([(x + y) % p for x, y in zip(da, db)]) for db in digits]
            for da in digits
        ]
        self._neg = [self._undigits([(-x) % p for x in da]) for da in digits]
        # powers of g: multiply digit vector by the indeterminate, reduce
        exp = [0] * (q - 1)
        log = [None] * q
        cur = [1] + [0] * (k - 1)
        for i in range(q - 1):
            a = self._undigits(cur)
            if log[a] is not None:
                raise FieldError(f"shipped polynomial for F_{p}^{k} is not primitive")
            exp[i] = a
            log[a] = i
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * m) % p for c, m in zip(cur, self.modulus)]
        self._exp = exp
        self._log = log

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if self.k == 1:
            if n < 0:
                return pow(self.inv(a), -n, self.p)
            return pow(a, n, self.p)
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frobenius(self, a: int, e: int = 1) -> int:
        """``a ** (p**e)``."""
        return self.pow(a, pow(self.p, e % self.k) if self.k > 1 else 1)

    def pth_root(self, a: int, e: int = 1) -> int:
        """The unique ``d`` with ``d ** (p**e) == a``."""
        if self.k == 1:
            return a
        return self.pow(a, self.p ** ((-e) % self.k))

    def from_int(self, n: int) -> int:
        return n % self.p

    def generator(self) -> int:
        """A multiplicative generator (``g`` for extension fields)."""
        if self.k > 1:
            return self.p
        return _prime_generator(self.p)

    def elements(self):
        return range(self.q)

    def render(self, a: int, gen: str = "g") -> str:
        if self.k == 1:
            return str(a)
        parts = []
        for i, d in reversed(list(enumerate(self._digits(a)))):
            if d == 0:
                continue
            mono = "" if i == 0 else (gen if i == 1 else f"{gen}^{i}")
            if not mono:
                parts.append(str(d))
            elif d == 1:
                parts.append(mono)
            else:
                parts.append(f"{d}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __eq__(self, other):
        return isinstance(other, GroundField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return f"GroundField(p={self.p}, k={self.k})"

    def __str__(self):
        return f"F_{self.q}"


@lru_cache(maxsize=None)
def _prime_generator(p: int) -> int:
    if p == 2:
        return 1
    n = p - 1
    factors = set()
    m, f = n, 2
    while f * f <= m:
        while m % f == 0:
            factors.add(f)
            m //= f
        f += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, n // r, p) != 1 for r in factors):
            return g
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> GroundField:
    """Shared GroundField instance (tables are built once)."""
    return GroundField(p, k)


def coeff_pth_root(F: GroundField, c: int, e: int = 1) -> int:
    return F.pth_root(c, e)
