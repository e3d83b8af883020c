"""Dense mod-p series kernels.

Compiled with numba when available; ``VALFROB_NUMBA=0`` selects the pure numpy
versions (also used when numba cannot be imported).  Both back ends take and
return int64 arrays with entries in [0, p).
"""

from __future__ import annotations

import os

import numpy as np

_WANT_NUMBA = os.environ.get("VALFROB_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


def conv_trunc_numpy(a, b, n, p):
    """(a * b) mod (t^n, p)."""
    a = np.asarray(a[:n], dtype=np.int64)
    b = np.asarray(b[:n], dtype=np.int64)
    if a.size == 0 or b.size == 0:
        return np.zeros(n, dtype=np.int64)
    if p >= 1 << 20:
        raise ValueError("numpy kernel supports p < 2^20")
    c = np.convolve(a, b)[:n] % p
    out = np.zeros(n, dtype=np.int64)
    out[: c.size] = c
    return out


def frobenius_numpy(a, p, n):
    """x(t)^p truncated to n coefficients (prime field: c^p = c)."""
    out = np.zeros(n, dtype=np.int64)
    idx = np.arange(a.size) * p
    keep = idx < n
    out[idx[keep]] = a[: keep.size][keep]
    return out


def split_numpy(a, p):
    """Coefficients at exponents divisible by p, reindexed by exponent / p."""
    return np.ascontiguousarray(a[::p]).astype(np.int64)


def first_nonzero_numpy(a):
    nz = np.flatnonzero(a)
    return int(nz[0]) if nz.size else -1


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def conv_trunc(a, b, n, p):
        out = np.zeros(n, dtype=np.int64)
        la = min(a.shape[0], n)
        lb = min(b.shape[0], n)
        # accumulate unreduced; reduce before int64 could overflow
        chunk = max(1, (1 << 62) // ((p - 1) * (p - 1) + 1))
        pending = 0
        for i in range(la):
            ai = a[i]
            if ai == 0:
                continue
            top = min(lb, n - i)
            for j in range(top):
                out[i + j] += ai * b[j]
            pending += 1
            if pending == chunk:
                for j in range(n):
                    out[j] %= p
                pending = 0
        for j in range(n):
            out[j] %= p
        return out

    @njit(cache=True)
    def frobenius(a, p, n):
        out = np.zeros(n, dtype=np.int64)
        for i in range(a.shape[0]):
            k = i * p
            if k >= n:
                break
            out[k] = a[i]
        return out

    @njit(cache=True)
    def split(a, p):
        m = (a.shape[0] + p - 1) // p
        out = np.zeros(m, dtype=np.int64)
        for i in range(m):
            out[i] = a[i * p]
        return out

    @njit(cache=True)
    def first_nonzero(a):
        for i in range(a.shape[0]):
            if a[i] != 0:
                return i
        return -1

    return conv_trunc, frobenius, split, first_nonzero


BACKEND = "numpy"
conv_trunc = conv_trunc_numpy
frobenius = frobenius_numpy
split = split_numpy
first_nonzero = first_nonzero_numpy

if _WANT_NUMBA:
    try:
        _nb = _build_numba()
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _nb = None
    if _nb is not None:
        _conv, _frob, _split, _first = _nb

        def conv_trunc(a, b, n, p):  # noqa: F811
            return _conv(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64), int(n), int(p))

        def frobenius(a, p, n):  # noqa: F811
            return _frob(np.asarray(a, dtype=np.int64), int(p), int(n))

        def split(a, p):  # noqa: F811
            return _split(np.asarray(a, dtype=np.int64), int(p))

        def first_nonzero(a):  # noqa: F811
            return int(_first(np.asarray(a, dtype=np.int64)))

        BACKEND = "numba"
