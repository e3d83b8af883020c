"""Exact ordered abelian groups used as value groups.

Kinds:

* ``Lex(d)``: Z^d ordered lexicographically (first coordinate dominant).
* ``Embedded(oracle)``: Z + Z*alpha inside R for one irrational alpha, or Z
  itself when no oracle is given.  Elements are integer pairs (a, b) = a + b*alpha.
* ``PDivisible(p)``: Z[1/p]; elements are (numerator, e) meaning num / p^e with
  p not dividing num unless the element is zero.
* ``LexSum(components)``: lexicographic sum, first component dominant.
* ``Subgroup(ambient, generators)``: the subgroup generated by finitely many
  elements (used for the value group of a monomial valuation).

Every group decomposes into *archimedean blocks* (a copy of Z, an embedded
rank-2 block, or Z[1/p]); ``flat`` maps an element to its block coordinates,
which is how subgroups, weight matrices and kernel lattices are computed.
"""

from __future__ import annotations

import random
import threading
from fractions import Fraction
from functools import total_ordering

from .errors import GroupError, NotPDivisibleError, PrecisionExhausted
from .lattice import hermite_rows, left_kernel, matvec_rows, rank as int_rank

LESS, EQUAL, GREATER = -1, 0, 1

PI_DIGITS = "1415926535897932384626433832795028841971693993751058209749445923"


class IrrationalOracle:
    """Nested rational enclosures of a fixed irrational number.

    ``enclosure(n)`` returns (lo, hi) with hi - lo = 10^-n.  Results are
    memoized under a lock, so one oracle can be shared between threads.
    """

    name = "irrational"
    max_digits = None

    def __init__(self):
        self._cache = {}
        self._lock = threading.Lock()

    def enclosure(self, digits: int):
        if self.max_digits is not None and digits > self.max_digits:
            raise PrecisionExhausted(
                f"{self.name} enclosure requested to {digits} digits; table holds {self.max_digits}",
                limit=self.max_digits,
            )
        with self._lock:
            hit = self._cache.get(digits)
            if hit is None:
                hit = self._cache[digits] = self._compute(digits)
        return hit

    def _compute(self, digits):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(type(self))

    def __repr__(self):
        return f"{type(self).__name__}()"


class PiOracle(IrrationalOracle):
    """pi from a fixed 64-digit table; finer requests raise PrecisionExhausted."""

    name = "pi"
    max_digits = len(PI_DIGITS)

    def _compute(self, digits):
        lo = Fraction(int("3" + PI_DIGITS[:digits]), 10**digits)
        return lo, lo + Fraction(1, 10**digits)


class Sqrt2Oracle(IrrationalOracle):
    """sqrt(2) by integer square roots, any precision."""

    name = "sqrt2"

    def _compute(self, digits):
        from math import isqrt

        s = 10**digits
        lo = Fraction(isqrt(2 * s * s), s)
        return lo, lo + Fraction(1, s)


ORACLES = {"pi": PiOracle, "sqrt2": Sqrt2Oracle}
_ORACLE_INSTANCES = {}


def oracle(name):
    if name not in ORACLES:
        raise GroupError(f"unknown irrational {name!r}; known: {sorted(ORACLES)}")
    if name not in _ORACLE_INSTANCES:
        _ORACLE_INSTANCES[name] = ORACLES[name]()
    return _ORACLE_INSTANCES[name]


def sign_of_linear_form(a, b, orc: IrrationalOracle):
    """Sign of a + b*alpha for rationals a, b (decided by refinement)."""
    if b == 0:
        return (a > 0) - (a < 0)
    digits = 2
    while True:
        cap = orc.max_digits
        if cap is not None and digits > cap:
            digits = cap
        lo, hi = orc.enclosure(digits)
        x, y = (a + b * lo, a + b * hi) if b > 0 else (a + b * hi, a + b * lo)
        if x > 0:
            return GREATER
        if y < 0:
            return LESS
        if cap is not None and digits >= cap:
            raise PrecisionExhausted(
                f"sign of {a} + {b}*{orc.name} undecided at {cap} digits", limit=cap
            )
        digits *= 2


@total_ordering
class GroupElement:
    """An element of a ValueGroup; arithmetic and order delegate to the group."""

    __slots__ = ("group", "coords")

    def __init__(self, group, coords):
        self.group = group
        self.coords = coords

    def _other(self, other):
        if isinstance(other, GroupElement):
            if other.group != self.group:
                raise GroupError("elements of different groups")
            return other.coords
        if other == 0:
            return self.group.zero().coords
        raise TypeError(f"cannot combine GroupElement with {type(other).__name__}")

    def __add__(self, other):
        return GroupElement(self.group, self.group._add(self.coords, self._other(other)))

    __radd__ = __add__

    def __neg__(self):
        return GroupElement(self.group, self.group._neg(self.coords))

    def __sub__(self, other):
        return GroupElement(self.group, self.group._add(self.coords, self.group._neg(self._other(other))))

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.group, self.group._scale(self.coords, k))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, GroupElement):
            return self.group == other.group and self.coords == other.coords
        if other == 0:
            return self.coords == self.group.zero().coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.group._cmp(self.coords, self._other(other)) < 0

    def is_zero(self):
        return self.coords == self.group.zero().coords

    def sign(self):
        return self.group._cmp(self.coords, self.group.zero().coords)

    def to_json(self):
        return self.group.coords_to_json(self.coords)

    def render(self):
        return self.group.render(self.coords)

    def __repr__(self):
        return f"<{self.render()} in {self.group.describe()}>"

    __str__ = render


class ValueGroup:
    """Base class; subclasses implement the coordinate-level hooks."""

    kind = "abstract"

    # hooks on raw coordinates
    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _scale(self, a, k):
        raise NotImplementedError

    def _cmp(self, a, b):
        raise NotImplementedError

    def _normalize(self, c):
        return c

    # public API
    def element(self, coords) -> GroupElement:
        return GroupElement(self, self._normalize(self.coords_from_json(coords)))

    def zero(self) -> GroupElement:
        raise NotImplementedError

    def cmp(self, a: GroupElement, b: GroupElement) -> int:
        """-1, 0 or 1 as a <, =, > b."""
        return self._cmp(a.coords, b.coords)

    def min(self, elements):
        it = iter(elements)
        best = next(it)
        for x in it:
            if self._cmp(x.coords, best.coords) < 0:
                best = x
        return best

    @property
    def rational_rank(self) -> int:
        raise NotImplementedError

    @property
    def p_divisible_flag(self) -> bool:
        return False

    @property
    def finitely_generated(self) -> bool:
        return not any(b[0] == "pdiv" for b in self.blocks())

    def index_p_gamma(self, p: int) -> int:
        raise NotImplementedError

    def smallest_positive(self):
        raise NotImplementedError

    def convex_rank(self) -> int:
        """Number of nonzero convex subgroups (Krull dimension of the valuation ring)."""
        raise NotImplementedError

    def blocks(self):
        """List of archimedean blocks: ("z",), ("emb", oracle) or ("pdiv", p)."""
        raise NotImplementedError

    def flat(self, coords):
        """Rational block coordinates of an element (list of Fractions)."""
        raise NotImplementedError

    def from_flat(self, flat):
        raise NotImplementedError

    def random_element(self, rng: random.Random, bound: int = 5) -> GroupElement:
        raise NotImplementedError

    def coords_from_json(self, data):
        return data

    def coords_to_json(self, coords):
        return coords

    def render(self, coords) -> str:
        return str(coords)

    def describe(self) -> str:
        return self.kind

    def to_json(self):
        raise NotImplementedError

    def __repr__(self):
        return f"<ValueGroup {self.describe()}>"


def _block_width(block):
    return 2 if block[0] == "emb" else 1


class Lex(ValueGroup):
    kind = "lex"

    def __init__(self, d: int):
        if d < 0:
            raise GroupError("rank must be nonnegative")
        self.d = d

    def __eq__(self, other):
        return isinstance(other, Lex) and other.d == self.d

    def __hash__(self):
        return hash(("lex", self.d))

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _scale(self, a, k):
        return tuple(k * x for x in a)

    def _cmp(self, a, b):
        return (a > b) - (a < b)

    def coords_from_json(self, data):
        c = tuple(int(x) for x in data)
        if len(c) != self.d:
            raise GroupError(f"expected {self.d} coordinates, got {len(c)}")
        return c

    def coords_to_json(self, coords):
        return list(coords)

    def zero(self):
        return GroupElement(self, (0,) * self.d)

    def basis(self, i):
        return GroupElement(self, tuple(int(j == i) for j in range(self.d)))

    @property
    def rational_rank(self):
        return self.d

    def index_p_gamma(self, p):
        return p**self.d

    def smallest_positive(self):
        if self.d == 0:
            return None
        return GroupElement(self, (0,) * (self.d - 1) + (1,))

    def convex_rank(self):
        return self.d

    def blocks(self):
        return [("z",)] * self.d

    def flat(self, coords):
        return [Fraction(x) for x in coords]

    def from_flat(self, flat):
        return GroupElement(self, tuple(int(x) for x in flat))

    def random_element(self, rng, bound=5):
        return GroupElement(self, tuple(rng.randint(-bound, bound) for _ in range(self.d)))

    def render(self, coords):
        return "(" + ", ".join(str(x) for x in coords) + ")"

    def describe(self):
        return f"Z^{self.d} (lex)"

    def to_json(self):
        return {"kind": "lex", "rank": self.d}


class Embedded(ValueGroup):
    """Z + Z*alpha in R (rank 2), or Z (rank 1, no oracle)."""

    kind = "embedded"

    def __init__(self, irrational: IrrationalOracle | None = None):
        self.oracle = irrational
        self.d = 1 if irrational is None else 2

    def __eq__(self, other):
        return isinstance(other, Embedded) and other.oracle == self.oracle

    def __hash__(self):
        return hash(("embedded", self.oracle))

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _scale(self, a, k):
        return tuple(k * x for x in a)

    def _cmp(self, a, b):
        if self.d == 1:
            return (a[0] > b[0]) - (a[0] < b[0])
        return sign_of_linear_form(a[0] - b[0], a[1] - b[1], self.oracle)

    def coords_from_json(self, data):
        c = tuple(int(x) for x in data)
        if len(c) != self.d:
            raise GroupError(f"expected {self.d} coordinates, got {len(c)}")
        return c

    def coords_to_json(self, coords):
        return list(coords)

    def zero(self):
        return GroupElement(self, (0,) * self.d)

    @property
    def rational_rank(self):
        return self.d

    def index_p_gamma(self, p):
        return p**self.d

    def smallest_positive(self):
        # Z + Z*alpha with alpha irrational is dense in R
        if self.d == 1:
            return GroupElement(self, (1,))
        return None

    def convex_rank(self):
        return 1

    def blocks(self):
        return [("z",)] if self.d == 1 else [("emb", self.oracle)]

    def flat(self, coords):
        return [Fraction(x) for x in coords]

    def from_flat(self, flat):
        return GroupElement(self, tuple(int(x) for x in flat))

    def random_element(self, rng, bound=5):
        return GroupElement(self, tuple(rng.randint(-bound, bound) for _ in range(self.d)))

    def render(self, coords):
        if self.d == 1:
            return str(coords[0])
        a, b = coords
        name = self.oracle.name
        if b == 0:
            return str(a)
        bpart = name if b == 1 else ("-" + name if b == -1 else f"{b}*{name}")
        if a == 0:
            return bpart
        return f"{a} + {bpart}" if b > 0 else f"{a} - {bpart.lstrip('-')}"

    def describe(self):
        return "Z" if self.d == 1 else f"Z + Z*{self.oracle.name} (in R)"

    def to_json(self):
        if self.d == 1:
            return {"kind": "embedded", "rank": 1}
        return {"kind": "embedded", "rank": 2, "irrational": self.oracle.name}


class PDivisible(ValueGroup):
    """Z[1/p] with its order as a subgroup of Q."""

    kind = "p_divisible"

    def __init__(self, p: int):
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PDivisible) and other.p == self.p

    def __hash__(self):
        return hash(("pdiv", self.p))

    def _normalize(self, c):
        num, e = c
        if num == 0:
            return (0, 0)
        while e > 0 and num % self.p == 0:
            num //= self.p
            e -= 1
        while e < 0:
            num *= self.p
            e += 1
        return (num, e)

    def _frac(self, c):
        return Fraction(c[0], self.p ** c[1])

    def _from_frac(self, x: Fraction):
        den = x.denominator
        e = 0
        while den % self.p == 0:
            den //= self.p
            e += 1
        if den != 1:
            raise GroupError(f"{x} is not in Z[1/{self.p}]")
        return (x.numerator, e)

    def _add(self, a, b):
        return self._from_frac(self._frac(a) + self._frac(b))

    def _neg(self, a):
        return (-a[0], a[1])

    def _scale(self, a, k):
        return self._normalize((a[0] * k, a[1]))

    def _cmp(self, a, b):
        x, y = self._frac(a), self._frac(b)
        return (x > y) - (x < y)

    def coords_from_json(self, data):
        if isinstance(data, str):
            return self._from_frac(Fraction(data))
        num, e = data
        return self._normalize((int(num), int(e)))

    def coords_to_json(self, coords):
        return list(coords)

    def element(self, coords):
        if isinstance(coords, Fraction) or isinstance(coords, int):
            return GroupElement(self, self._from_frac(Fraction(coords)))
        return super().element(coords)

    def fraction(self, g: GroupElement) -> Fraction:
        return self._frac(g.coords)

    def zero(self):
        return GroupElement(self, (0, 0))

    @property
    def rational_rank(self):
        return 1

    @property
    def p_divisible_flag(self):
        return True

    def index_p_gamma(self, p):
        return 1 if p == self.p else p

    def smallest_positive(self):
        return None

    def convex_rank(self):
        return 1

    def blocks(self):
        return [("pdiv", self.p)]

    def flat(self, coords):
        return [self._frac(coords)]

    def from_flat(self, flat):
        return GroupElement(self, self._from_frac(Fraction(flat[0])))

    def divide_by_p(self, coords):
        return (coords[0], coords[1] + 1) if coords[0] else coords

    def random_element(self, rng, bound=5):
        return GroupElement(self, self._normalize((rng.randint(-bound * 9, bound * 9), rng.randint(0, 3))))

    def render(self, coords):
        num, e = coords
        if e == 0:
            return str(num)
        return f"{num}/{self.p ** e}"

    def describe(self):
        return f"Z[1/{self.p}]"

    def to_json(self):
        return {"kind": "p_divisible", "p": self.p}


class LexSum(ValueGroup):
    kind = "lex_sum"

    def __init__(self, components):
        self.components = tuple(components)
        if not self.components:
            raise GroupError("lex_sum needs at least one component")

    def __eq__(self, other):
        return isinstance(other, LexSum) and other.components == self.components

    def __hash__(self):
        return hash(("lex_sum", self.components))

    def _normalize(self, c):
        return tuple(G._normalize(x) for G, x in zip(self.components, c))

    def _add(self, a, b):
        return tuple(G._add(x, y) for G, x, y in zip(self.components, a, b))

    def _neg(self, a):
        return tuple(G._neg(x) for G, x in zip(self.components, a))

    def _scale(self, a, k):
        return tuple(G._scale(x, k) for G, x in zip(self.components, a))

    def _cmp(self, a, b):
        for G, x, y in zip(self.components, a, b):
            c = G._cmp(x, y)
            if c:
                return c
        return EQUAL

    def coords_from_json(self, data):
        if len(data) != len(self.components):
            raise GroupError("lex_sum element needs one coordinate list per component")
        return tuple(G._normalize(G.coords_from_json(x)) for G, x in zip(self.components, data))

    def coords_to_json(self, coords):
        return [G.coords_to_json(x) for G, x in zip(self.components, coords)]

    def zero(self):
        return GroupElement(self, tuple(G.zero().coords for G in self.components))

    def inject(self, i, g: GroupElement) -> GroupElement:
        """The element with g in component i and zero elsewhere."""
        parts = [G.zero().coords for G in self.components]
        parts[i] = g.coords
        return GroupElement(self, tuple(parts))

    def component(self, i, x: GroupElement) -> GroupElement:
        return GroupElement(self.components[i], x.coords[i])

    @property
    def rational_rank(self):
        return sum(G.rational_rank for G in self.components)

    @property
    def p_divisible_flag(self):
        return all(G.p_divisible_flag for G in self.components)

    def index_p_gamma(self, p):
        out = 1
        for G in self.components:
            out *= G.index_p_gamma(p)
        return out

    def smallest_positive(self):
        # the last nontrivial component decides
        for i in range(len(self.components) - 1, -1, -1):
            G = self.components[i]
            if G.rational_rank == 0:
                continue
            s = G.smallest_positive()
            if s is None:
                return None
            return self.inject(i, s)
        return None

    def convex_rank(self):
        return sum(G.convex_rank() for G in self.components)

    def blocks(self):
        out = []
        for G in self.components:
            out.extend(G.blocks())
        return out

    def flat(self, coords):
        out = []
        for G, x in zip(self.components, coords):
            out.extend(G.flat(x))
        return out

    def from_flat(self, flat):
        parts = []
        pos = 0
        for G in self.components:
            w = sum(_block_width(b) for b in G.blocks())
            parts.append(G.from_flat(flat[pos:pos + w]).coords)
            pos += w
        return GroupElement(self, tuple(parts))

    def random_element(self, rng, bound=5):
        return GroupElement(self, tuple(G.random_element(rng, bound).coords for G in self.components))

    def render(self, coords):
        return "(" + ", ".join(G.render(x) for G, x in zip(self.components, coords)) + ")"

    def describe(self):
        return " (+) ".join(G.describe() for G in self.components) + " (lex)"

    def to_json(self):
        return {"kind": "lex_sum", "components": [G.to_json() for G in self.components]}


class Subgroup(ValueGroup):
    """Subgroup of ``ambient`` generated by finitely many elements.

    Elements are ambient coordinates; order and arithmetic are inherited.  The
    structural invariants are computed from a Z-basis of the generated lattice
    in integer block coordinates.
    """

    kind = "subgroup"

    def __init__(self, ambient: ValueGroup, generators):
        self.ambient = ambient
        self.generators = tuple(g if isinstance(g, GroupElement) else ambient.element(g) for g in generators)
        self._blocks = ambient.blocks()
        flats = [ambient.flat(g.coords) for g in self.generators]
        width = sum(_block_width(b) for b in self._blocks)
        # common denominator (a power of p for Z[1/p] blocks)
        den = 1
        for row in flats:
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
        self._den = den
        rows = [[int(x * den) for x in row] for row in flats] or []
        self._width = width
        self.basis_rows = hermite_rows([r for r in rows if any(r)]) if rows else []
        self._rank = int_rank(self.basis_rows) if self.basis_rows else 0
        self._analyse()

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.ambient == self.ambient
                and other.basis_rows == self.basis_rows and other._den == self._den)

    def __hash__(self):
        return hash(("subgroup", self.ambient, tuple(map(tuple, self.basis_rows))))

    def _add(self, a, b):
        return self.ambient._add(a, b)

    def _neg(self, a):
        return self.ambient._neg(a)

    def _scale(self, a, k):
        return self.ambient._scale(a, k)

    def _cmp(self, a, b):
        return self.ambient._cmp(a, b)

    def _normalize(self, c):
        return self.ambient._normalize(c)

    def coords_from_json(self, data):
        return self.ambient.coords_from_json(data)

    def coords_to_json(self, coords):
        return self.ambient.coords_to_json(coords)

    def zero(self):
        return GroupElement(self, self.ambient.zero().coords)

    def lift(self, g: GroupElement) -> GroupElement:
        return GroupElement(self.ambient, g.coords)

    def _analyse(self):
        B = self.basis_rows
        starts = []
        pos = 0
        for b in self._blocks:
            starts.append(pos)
            pos += _block_width(b)
        starts.append(pos)
        # L_j = elements whose block coordinates before block j vanish
        ranks = []
        pieces = []
        for j in range(len(self._blocks) + 1):
            before = starts[j]
            if not B:
                ranks.append(0)
                pieces.append([])
                continue
            if before == 0:
                L = B
            else:
                sub = [row[:before] for row in B]
                C = left_kernel(sub)
                L = [row for row in matvec_rows(C, B) if any(row)] if C else []
            r = int_rank(L) if L else 0
            ranks.append(r)
            pieces.append(L)
        self._convex = sum(1 for j in range(len(self._blocks)) if ranks[j] > ranks[j + 1])
        self._smallest = None
        for j in range(len(self._blocks) - 1, -1, -1):
            if ranks[j] == 0:
                continue
            if ranks[j] == 1:
                v = hermite_rows(pieces[j])[0]
                g = self._from_int_flat(v)
                if g.sign() < 0:
                    g = -g
                self._smallest = g
            break

    def _from_int_flat(self, row):
        flat = [Fraction(x, self._den) for x in row]
        return GroupElement(self, self.ambient.from_flat(flat).coords)

    @property
    def rational_rank(self):
        return self._rank

    @property
    def p_divisible_flag(self):
        return self._rank == 0

    @property
    def finitely_generated(self):
        return True

    def index_p_gamma(self, p):
        return p**self._rank

    def smallest_positive(self):
        return self._smallest

    def convex_rank(self):
        return self._convex

    def blocks(self):
        return self._blocks

    def flat(self, coords):
        return self.ambient.flat(coords)

    def from_flat(self, flat):
        return GroupElement(self, self.ambient.from_flat(flat).coords)

    def basis(self):
        return [self._from_int_flat(r) for r in self.basis_rows]

    def random_element(self, rng, bound=5):
        g = self.zero()
        for b in self.basis():
            g = g + b * rng.randint(-bound, bound)
        return g

    def render(self, coords):
        return self.ambient.render(coords)

    def describe(self):
        gens = ", ".join(g.render() for g in self.basis()) or "0"
        return f"<{gens}> in {self.ambient.describe()}"

    def to_json(self):
        return {"kind": "subgroup", "ambient": self.ambient.to_json(),
                "generators": [g.to_json() for g in self.generators]}


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def group_from_json(data, p: int | None = None) -> ValueGroup:
    kind = data.get("kind")
    if kind == "lex":
        return Lex(int(data["rank"]))
    if kind == "embedded":
        r = int(data.get("rank", 2))
        if r == 1:
            return Embedded(None)
        if r != 2:
            raise GroupError("embedded groups have rank 1 or 2 (one irrational generator)")
        return Embedded(oracle(data.get("irrational", "pi")))
    if kind == "p_divisible":
        q = data.get("p", p)
        if q is None:
            raise GroupError("p_divisible group needs p")
        return PDivisible(int(q))
    if kind == "lex_sum":
        return LexSum([group_from_json(c, p) for c in data["components"]])
    if kind == "subgroup":
        amb = group_from_json(data["ambient"], p)
        return Subgroup(amb, [amb.element(g) for g in data["generators"]])
    raise GroupError(f"unknown group kind {kind!r}")


# -- module-level operations --------------------------------------------------


def cmp(a: GroupElement, b: GroupElement, G: ValueGroup | None = None) -> int:
    G = G or a.group
    return G._cmp(a.coords, b.coords)


def index_p_gamma(G: ValueGroup, p: int) -> int:
    """[G : pG]."""
    return G.index_p_gamma(p)


def smallest_positive(G: ValueGroup):
    return G.smallest_positive()


def rational_rank(G: ValueGroup) -> int:
    return G.rational_rank


def unit_pth_power_factor(gamma: GroupElement, p: int) -> GroupElement:
    """gamma / p in a p-divisible group, checked by p * (gamma/p) == gamma.

    Witnesses m = m^[p] at the level of values: every positive value is p
    times a positive value.
    """
    G = gamma.group
    if not G.p_divisible_flag or (isinstance(G, Subgroup)):
        raise NotPDivisibleError(f"{G.describe()} is not p-divisible")
    if gamma.sign() <= 0:
        raise GroupError("unit_pth_power_factor needs a positive value")
    if isinstance(G, PDivisible):
        if G.p != p:
            raise NotPDivisibleError(f"{G.describe()} is not {p}-divisible")
        half = GroupElement(G, G.divide_by_p(gamma.coords))
    elif isinstance(G, LexSum):
        parts = []
        for H, x in zip(G.components, gamma.coords):
            if not isinstance(H, PDivisible) or H.p != p:
                raise NotPDivisibleError(f"{G.describe()} is not {p}-divisible")
            parts.append(H.divide_by_p(x))
        half = GroupElement(G, tuple(parts))
    else:
        raise NotPDivisibleError(f"{G.describe()} is not p-divisible")
    if half * p != gamma or half.sign() <= 0:
        raise AssertionError("p-th part certificate failed")
    return half
