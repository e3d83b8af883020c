"""Compare the numba and numpy series kernels.

    python benchmarks/bench_kernels.py [--sizes 256 1024 4096 16384] [--repeat 5]

Also times one end-to-end series valuation under each backend (in a
subprocess, since the backend is fixed at import time).
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from valfrob import _kernels as k


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


END_TO_END = """
import time
from valfrob.gf import field
from valfrob.poly import FieldDescriptor
from valfrob.series import SeriesEmbedding
K = FieldDescriptor(field(5), ("x", "y"))
f = K.parse("y^6 - x^5*y + x^12 + 3*x^2*y^4")
t0 = time.perf_counter()
for s in range(20):
    SeriesEmbedding(5, seed=s, precision=2048).value(f)
print(time.perf_counter() - t0)
"""


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[256, 1024, 4096, 16384])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("-p", type=int, default=5)
    args = ap.parse_args(argv)

    nb = k._build_numba()
    nb_conv, nb_frob, nb_split, _ = nb
    p = args.p
    rng = np.random.default_rng(0)
    # warm up the jit
    w = rng.integers(0, p, 8).astype(np.int64)
    nb_conv(w, w, 8, p)
    nb_frob(w, p, 8)
    nb_split(w, p)

    print(f"{'kernel':<12}{'n':>8}{'numba (ms)':>14}{'numpy (ms)':>14}{'ratio':>8}")
    for n in args.sizes:
        a = rng.integers(0, p, n).astype(np.int64)
        b = rng.integers(0, p, n).astype(np.int64)
        rows = [
            ("conv_trunc", lambda: nb_conv(a, b, n, p), lambda: k.conv_trunc_numpy(a, b, n, p)),
            ("frobenius", lambda: nb_frob(a, p, n), lambda: k.frobenius_numpy(a, p, n)),
            ("split", lambda: nb_split(a, p), lambda: k.split_numpy(a, p)),
        ]
        for name, f_nb, f_np in rows:
            t_nb, t_np = best_of(f_nb, args.repeat), best_of(f_np, args.repeat)
            print(f"{name:<12}{n:>8}{t_nb * 1e3:>14.3f}{t_np * 1e3:>14.3f}{t_np / max(t_nb, 1e-12):>8.2f}")

    print("\nend to end (20 series valuations at precision 2048):")
    for flag in ("1", "0"):
        env = dict(os.environ, VALFROB_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        print(f"  VALFROB_NUMBA={flag}: {float(out.stdout):.3f} s")


if __name__ == "__main__":
    main()
