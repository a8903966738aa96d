"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--size 100000] [--n 6] [--repeat 5]

Prints one row per kernel with the best-of-``repeat`` wall time of each
backend and their ratio. Inputs are identical for both backends.
"""
import argparse
import math
import timeit

import numpy as np

from entropy_extremes import _pykernels

try:
    from entropy_extremes import _ckernels
except ImportError:
    _ckernels = None


def cases(n, size, rng):
    gv = rng.uniform(0.0, 1.0 / n, size)
    gw = rng.uniform(1.0 / n, 1.0, size)
    hv = _pykernels.h_v(n, gv)
    hw = _pykernels.h_w(n, gw)
    tv = _pykernels.norm_v(n, gv, 2.0)
    tw = _pykernels.norm_w(n, gw, 2.0)
    # a=2 and a=0.5 hit square/sqrt shortcuts in both backends; a=3 does not
    tv3 = _pykernels.norm_v(n, gv, 3.0)
    tw3 = _pykernels.norm_w(n, gw, 3.0)
    rows = rng.dirichlet(np.ones(n), size)
    return [
        ("h_v", lambda k: k.h_v(n, gv)),
        ("h_w", lambda k: k.h_w(n, gw)),
        ("norm_v a=2", lambda k: k.norm_v(n, gv, 2.0)),
        ("norm_w a=2", lambda k: k.norm_w(n, gw, 2.0)),
        ("norm_v a=3", lambda k: k.norm_v(n, gv, 3.0)),
        ("norm_w a=3", lambda k: k.norm_w(n, gw, 3.0)),
        ("inv_h_v", lambda k: k.inv_h_v(n, hv)),
        ("inv_h_w", lambda k: k.inv_h_w(n, hw)),
        ("inv_norm_v a=2", lambda k: k.inv_norm_v(n, tv, 2.0)),
        ("inv_norm_w a=2", lambda k: k.inv_norm_w(n, tw, 2.0)),
        ("inv_norm_v a=3", lambda k: k.inv_norm_v(n, tv3, 3.0)),
        ("inv_norm_w a=3", lambda k: k.inv_norm_w(n, tw3, 3.0)),
        ("entropy_rows", lambda k: k.entropy_rows(rows)),
        ("norm_rows a=0.5", lambda k: k.norm_rows(rows, 0.5)),
        ("norm_rows a=3", lambda k: k.norm_rows(rows, 3.0)),
        ("norm_rows a=inf", lambda k: k.norm_rows(rows, math.inf)),
    ]


def best(fn, backend, repeat):
    return min(timeit.repeat(lambda: fn(backend), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=100_000)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled kernels are not built; run pip install -e . first")

    rng = np.random.default_rng(0)
    print(f"n={args.n} size={args.size} best of {args.repeat}")
    print(f"{'kernel':<18}{'numpy ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in cases(args.n, args.size, rng):
        tp = best(fn, _pykernels, args.repeat)
        tc = best(fn, _ckernels, args.repeat)
        print(f"{name:<18}{tp * 1e3:>12.2f}{tc * 1e3:>12.2f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
