import os
import subprocess
import sys

import numpy as np
import pytest

from valfrob import _kernels as k

numba = pytest.importorskip("numba")
nb_conv, nb_frob, nb_split, nb_first = k._build_numba()


@pytest.mark.parametrize("p", [2, 3, 7, 101])
def test_backends_agree(p):
    rng = np.random.default_rng(p)
    for n in (0, 1, 5, 64, 300):
        a = rng.integers(0, p, rng.integers(0, 2 * n + 1))
        b = rng.integers(0, p, rng.integers(0, 2 * n + 1))
        assert np.array_equal(nb_conv(a.astype(np.int64), b.astype(np.int64), n, p), k.conv_trunc_numpy(a, b, n, p))
        assert np.array_equal(nb_frob(a.astype(np.int64), p, n), k.frobenius_numpy(a, p, n))
        assert np.array_equal(nb_split(a.astype(np.int64), p), k.split_numpy(a, p))
        assert nb_first(a.astype(np.int64)) == k.first_nonzero_numpy(a)


def test_first_nonzero_empty_and_zero():
    assert k.first_nonzero_numpy(np.zeros(5, dtype=np.int64)) == -1
    assert nb_first(np.zeros(0, dtype=np.int64)) == -1


@pytest.mark.parametrize("flag,expected", [("0", "numpy"), ("1", "numba")])
def test_environment_flag_selects_backend(flag, expected):
    env = dict(os.environ, VALFROB_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", "from valfrob import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected


def test_numba_convolution_reduces_before_overflow():
    p = 2**31 - 1
    rng = np.random.default_rng(1)
    a = rng.integers(0, p, 12).astype(np.int64)
    b = rng.integers(0, p, 12).astype(np.int64)
    expected = [sum(int(a[i]) * int(b[m - i]) for i in range(m + 1)) % p for m in range(12)]
    assert list(nb_conv(a, b, 12, p)) == expected
