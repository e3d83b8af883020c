import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import make_field, random_poly
from valfrob.errors import DescriptorError, PrecisionExhausted
from valfrob.gf import field
from valfrob.groups import PDivisible, unit_pth_power_factor
from valfrob.poly import Polynomial
from valfrob.series import (
    DEFAULT_SEED,
    HARD_LIMIT,
    HahnSeries,
    LazySeries,
    SeriesEmbedding,
    embed_value,
    hahn_embed_value,
    hahn_y,
    reliability_bound,
    series_frobenius,
    series_ord,
    series_split,
)


def naive_mul(a, b, n, p):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] = (out[i + j] + int(x) * int(y)) % p
    return out


def test_seeded_stream_definition():
    for p in (2, 3, 5):
        s = LazySeries.seeded(p)
        raw = np.random.default_rng([DEFAULT_SEED, 0]).integers(0, p, size=256, dtype=np.int64)
        c = s.coeffs(256)
        assert c[0] == 0 and c[1] != 0
        assert list(c[2:]) == list(raw[2:])
        raw1 = np.random.default_rng([DEFAULT_SEED, 1]).integers(0, p, size=256, dtype=np.int64)
        assert list(s.coeffs(512)[256:]) == list(raw1)


def test_memo_agrees_with_regeneration():
    a = LazySeries.seeded(3, seed=99)
    long = a.coeffs(1000)
    b = LazySeries.seeded(3, seed=99)
    assert list(b.coeffs(10)) == list(long[:10])
    assert list(b.coeffs(1000)) == list(long)
    assert a[777] == long[777]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_series_product_matches_naive(p):
    rng = np.random.default_rng(p)
    for _ in range(20):
        a = rng.integers(0, p, 60)
        b = rng.integers(0, p, 60)
        prod = LazySeries.from_coeffs(p, a) * LazySeries.from_coeffs(p, b)
        assert list(prod.coeffs(60)) == naive_mul(list(a), list(b), 60, p)


def test_series_ord_examples():
    assert series_ord(LazySeries.monomial(5, 1)) == 1
    q = LazySeries.seeded(5)
    assert series_ord(q.shift(1)) >= 2
    with pytest.raises(PrecisionExhausted):
        series_ord(LazySeries.zero(5), cap=100)


def test_series_split_examples():
    p = 3
    t = LazySeries.monomial(p, 1)
    assert series_split(LazySeries.monomial(p, p)).equal_to(t, 50)
    assert series_split(t).equal_to(LazySeries.zero(p), 50)
    one_t_tp = LazySeries.from_coeffs(p, [1, 1] + [0] * (p - 2) + [1])
    assert series_split(one_t_tp).equal_to(LazySeries.from_coeffs(p, [1, 1]), 50)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_series_split_laws(p):
    rng = np.random.default_rng(10 + p)
    n = 200
    for _ in range(20):
        a = LazySeries.from_coeffs(p, rng.integers(0, p, n))
        b = LazySeries.from_coeffs(p, rng.integers(0, p, n))
        assert series_split(a + b).equal_to(series_split(a) + series_split(b), n)
        assert series_split(series_frobenius(a) * b).equal_to(a * series_split(b), n)
        assert series_split(series_frobenius(a)).equal_to(a, n)


def test_frobenius_is_pth_power():
    p = 3
    rng = np.random.default_rng(0)
    a = LazySeries.from_coeffs(p, rng.integers(0, p, 40))
    assert series_frobenius(a).equal_to(a * a * a, 120)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_embedding_values(p):
    K = make_field(p, ["x", "y"])
    E = SeriesEmbedding(p)
    assert embed_value(K.parse("x"), E) == 1
    assert embed_value(K.parse("1"), E) == 0
    assert embed_value(K.parse("y"), E) >= 2
    # frozen for the default seed: q(t) = t + ... for every p tested, so Y -> t^2 + ...
    assert embed_value(K.parse("y"), E) == 2
    assert embed_value(K.parse("y/x"), E) == embed_value(K.parse("y"), E) - 1
    assert embed_value(K.parse("y^2 - x^3"), E) == 3


@pytest.mark.parametrize("p", [2, 3])
def test_embedding_against_naive_image(p):
    E = SeriesEmbedding(p)
    F = field(p)
    rng = random.Random(p)
    n = 80
    y = [int(c) for c in E.images[1].coeffs(n)]
    for _ in range(50):
        f = random_poly(rng, F, 2, 5)
        img = [0] * n
        for (a, b), c in f.terms.items():
            term = [1] + [0] * (n - 1)
            for _ in range(b):
                term = naive_mul(term, y, n, p)
            for i in range(n - a):
                img[a + i] = (img[a + i] + c * term[i]) % p
        expected = next(i for i, c in enumerate(img) if c)
        assert E.value(f) == expected


def test_embedding_multiplicative():
    p = 2
    E = SeriesEmbedding(p)
    rng = random.Random(11)
    F = field(p)
    for _ in range(200):
        f, g = random_poly(rng, F, 2, 4, 4), random_poly(rng, F, 2, 4, 4)
        assert E.value(f * g) == E.value(f) + E.value(g)


def test_embedding_deterministic():
    K = make_field(3, ["x", "y"])
    f = K.parse("y - x^2 - x^3")
    vals = {SeriesEmbedding(3, seed=1).value(f) for _ in range(3)}
    assert len(vals) == 1


def test_embedding_escalation_and_exhaustion():
    p = 2
    E = SeriesEmbedding(p, precision=4, limit=64)
    F = field(p)
    # X^5 is invisible at precision 4; escalation finds it
    assert E.value(Polynomial.monomial(F, 2, (5, 0))) == 5
    with pytest.raises(PrecisionExhausted):
        E.value(Polynomial.monomial(F, 2, (70, 0)))
    assert SeriesEmbedding(p).limit == HARD_LIMIT


def test_embedding_rejects_extension_fields():
    K = make_field(2, ["x", "y"], k=2)
    with pytest.raises(DescriptorError):
        SeriesEmbedding(2).value(K.parse("g*x + y"))


# -- Hahn series --------------------------------------------------------------


def brute_product(a, b, p, bound):
    # oracle: list-of-pairs convolution, sorted afterwards
    acc = []
    for e1, c1 in a:
        for e2, c2 in b:
            if e1 + e2 < bound:
                acc.append((e1 + e2, c1 * c2))
    out = {}
    for e, c in acc:
        out[e] = (out.get(e, 0) + c) % p
    return sorted((e, c) for e, c in out.items() if c)


def test_hahn_product_matches_brute_force():
    rng = random.Random(4)
    p = 3
    for _ in range(100):
        a = [(Fraction(rng.randint(0, 20), p ** rng.randint(0, 3)), rng.randint(1, p - 1)) for _ in range(5)]
        b = [(Fraction(rng.randint(0, 20), p ** rng.randint(0, 3)), rng.randint(1, p - 1)) for _ in range(5)]
        A, B = HahnSeries(p), HahnSeries(p)
        for e, c in a:
            A = A + HahnSeries(p, {e: c})
        for e, c in b:
            B = B + HahnSeries(p, {e: c})
        bound = Fraction(rng.randint(1, 40), p)
        got = list(A.mul(B, bound).support())
        assert got == brute_product(list(A.support()), list(B.support()), p, bound)


def test_hahn_support_strictly_increasing():
    y = hahn_y(5, 10)
    exps = [e for e, _ in y.support()]
    assert all(a < b for a, b in zip(exps, exps[1:]))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_hahn_values(p):
    K = make_field(p, ["x", "y"])
    G = PDivisible(p)
    assert hahn_embed_value(K.parse("x"), p) == G.element(1)
    assert hahn_embed_value(K.parse("y"), p) == G.element(1 - Fraction(1, p))
    f = K.parse(f"y^{p} - x^{p - 1}*y")
    # the tails of Y^p and X^(p-1) Y coincide; only t^(p-1) survives
    assert hahn_embed_value(f, p) == G.element(p - 1)


def test_hahn_value_exhausted_on_kernel_element():
    p = 2
    K = make_field(p, ["x", "y"])
    with pytest.raises(PrecisionExhausted):
        hahn_embed_value(K.parse("y^2 - x*y - x"), p)


def test_reliability_bound():
    F = field(3)
    f = Polynomial(F, 2, {(0, 1): 1})
    assert reliability_bound(f, 3, 2) == 1 - Fraction(1, 27)
    assert reliability_bound(Polynomial(F, 2, {(2, 0): 1}), 3, 2) is None


def test_hahn_values_are_p_divisible():
    p = 3
    K = make_field(p, ["x", "y"])
    v = hahn_embed_value(K.parse("y + x^2"), p)
    h = unit_pth_power_factor(v, p)
    assert h * p == v


def test_hahn_multiplicative_on_samples():
    p = 2
    F = field(p)
    rng = random.Random(9)
    seen = 0
    for _ in range(60):
        f, g = random_poly(rng, F, 2, 3, 3), random_poly(rng, F, 2, 3, 3)
        try:
            vf, vg, vfg = (hahn_embed_value(h, p, cap=12) for h in (f, g, f * g))
        except PrecisionExhausted:
            continue
        assert vfg == vf + vg
        seen += 1
    assert seen > 30


def test_non_prime_series_rejected():
    with pytest.raises(DescriptorError):
        LazySeries.zero(4)
