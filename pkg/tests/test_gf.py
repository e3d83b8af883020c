"""Finite fields checked against a slow polynomial-arithmetic model."""

import itertools

import pytest

from valfrob.errors import FieldError
from valfrob.gf import CONWAY, GroundField, coeff_pth_root, field

SMALL = [(p, k) for (p, k) in [(2, 1), (3, 1), (5, 1), (7, 1)] + sorted(CONWAY) if p**k <= 81]


def _slow_mul(F, a, b):
    # schoolbook product of digit vectors reduced by the defining polynomial
    p, k = F.p, F.k
    da = [(a // p**i) % p for i in range(k)]
    db = [(b // p**i) % p for i in range(k)]
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = list(F.modulus) if k > 1 else []
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i, m in enumerate(mod):
                prod[d - k + i] = (prod[d - k + i] - c * m) % p
    return sum(c * p**i for i, c in enumerate(prod[:k]))


@pytest.mark.parametrize("p,k", SMALL)
def test_multiplication_matches_schoolbook(p, k):
    F = field(p, k)
    for a, b in itertools.product(range(F.q), repeat=2):
        assert F.mul(a, b) == _slow_mul(F, a, b)


@pytest.mark.parametrize("p,k", SMALL)
def test_field_axioms(p, k):
    F = field(p, k)
    for a in range(F.q):
        assert F.add(a, F.neg(a)) == 0
        assert F.sub(a, a) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.q) == a


@pytest.mark.parametrize("p,k", SMALL)
def test_pth_root_exhaustive(p, k):
    F = field(p, k)
    for e in (1, 2, 3):
        for c in range(F.q):
            r = F.pth_root(c, e)
            assert F.pow(r, p**e) == c
            assert F.frobenius(r, e) == c
            assert coeff_pth_root(F, c, e) == r


def test_f4_root_of_generator():
    F = field(2, 2)
    g = F.generator()
    assert g == 2
    assert F.pth_root(g) == F.mul(g, g)


def test_generator_is_primitive():
    for p, k in SMALL:
        F = field(p, k)
        g = F.generator()
        seen = {F.pow(g, i) for i in range(F.q - 1)}
        assert seen == set(range(1, F.q))


def test_bad_fields():
    with pytest.raises(FieldError):
        GroundField(4)
    with pytest.raises(FieldError):
        GroundField(11, 5)
    with pytest.raises(FieldError):
        GroundField(2, 0)


def test_render():
    F = field(3, 2)
    assert F.render(0) == "0"
    assert F.render(F.generator()) == "g"
