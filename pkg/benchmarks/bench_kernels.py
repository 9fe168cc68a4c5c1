#!/usr/bin/env python3
"""Numba kernels vs the pure-numpy fallback.

Kernel timings run in-process with an explicit backend.  The end-to-end
timing (degree pattern of (x^2+1)^97 - 97x^97 mod a prime, degree 194)
runs once per backend in a subprocess, since MONOGEN_NUMBA is read at import.

    python benchmarks/bench_kernels.py [--repeat 5] [--degree 194] [--prime 1000003]
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from monogen import _kernels as K

END_TO_END = """
import time
from monogen.family import build
from monogen.poly_mod import ModPoly, degree_pattern
f = build(({n}, {n}))
u = ModPoly({q}, f.coeffs)
degree_pattern(ModPoly({q}, build((3, 3)).coeffs))  # warm-up / compile
t0 = time.perf_counter()
for _ in range({repeat}):
    pat = degree_pattern(u)
print(time.perf_counter() - t0, pat)
"""


def kernel_timings(deg: int, p: int, repeat: int) -> list[tuple[str, float, float, float]]:
    rng = np.random.default_rng(0)
    a = rng.integers(0, p, deg, dtype=np.int64)
    b = rng.integers(0, p, deg, dtype=np.int64)
    m = rng.integers(0, p, deg + 1, dtype=np.int64)
    m[-1] = 1
    cases = {
        "mul": lambda be: K.mul(a, b, p, be),
        "mulmod": lambda be: K.mulmod(a, b, m, p, 1, be),
        "powmod (e = p)": lambda be: K.powmod(a, p, m, p, 1, be),
    }
    rows = []
    for name, fn in cases.items():
        fn("numba")  # compile outside the timing
        t_nb = min(timeit.repeat(lambda: fn("numba"), number=1, repeat=repeat))
        t_np = min(timeit.repeat(lambda: fn("numpy"), number=1, repeat=repeat))
        t_auto = min(timeit.repeat(lambda: fn(None), number=1, repeat=repeat))
        rows.append((name, t_nb, t_np, t_auto))
    return rows


def end_to_end(n: int, q: int, repeat: int, numba: bool) -> tuple[float, str]:
    env = {**os.environ, "MONOGEN_NUMBA": "1" if numba else "0"}
    code = END_TO_END.format(n=n, q=q, repeat=repeat)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    secs, pattern = out.stdout.split(" ", 1)
    return float(secs) / repeat, pattern.strip()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--degree", type=int, default=194)
    ap.add_argument("--prime", type=int, default=1_000_003)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        sys.exit("numba is unavailable or disabled (MONOGEN_NUMBA=0); nothing to compare")

    print(f"kernels, degree {args.degree}, p = {args.prime}, best of {args.repeat}")
    # "auto" is the default dispatch: convolution in numpy when int64 is safe, reduction in numba
    print(f"{'kernel':<16}{'numba ms':>10}{'numpy ms':>10}{'auto ms':>10}{'numpy/auto':>12}")
    for name, t_nb, t_np, t_auto in kernel_timings(args.degree, args.prime, args.repeat):
        print(f"{name:<16}{t_nb * 1e3:>10.3f}{t_np * 1e3:>10.3f}{t_auto * 1e3:>10.3f}{t_np / t_auto:>11.1f}x")

    n = args.degree // 2
    t_nb, pat_nb = end_to_end(n, args.prime, args.repeat, True)
    t_np, pat_np = end_to_end(n, args.prime, args.repeat, False)
    assert pat_nb == pat_np, "backends disagree"
    print(f"\ndegree pattern of (x^2+1)^{n} - {n}x^{n} mod {args.prime}: {pat_nb[:60]}{'...' if len(pat_nb) > 60 else ''}")
    print(f"numba {t_nb:.3f} s   numpy {t_np:.3f} s   speedup {t_np / t_nb:.1f}x")


if __name__ == "__main__":
    main()
