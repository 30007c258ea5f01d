"""Compare the numba and numpy backends of the support-scan kernels.

    python3 benchmarks/bench_kernels.py [--n 4] [--repeat 3]

Input: the flipped double Schubert polynomial of the longest permutation,
``prod (t_i + s_j)``, the densest polynomial in each survey. Both backends
must return identical results; the script exits nonzero otherwise.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from covol import _kernels
from covol.certify import _dlc_candidates, _radix
from covol.perm import w0
from covol.poly import flip_signs
from covol.schubert import s_variables, schubert


def inputs(n: int):
    h = flip_signs(schubert(w0(n), double=True), s_variables(n))
    pts = sorted(h.terms)
    weights = _radix(pts, 1)
    arr = np.array(pts, dtype=np.int64)
    ex_args = (arr, arr @ weights, weights)
    cands = _dlc_candidates(pts, h.nvars)
    dweights = _radix(cands, 3)
    codes = arr @ dweights
    order = np.argsort(codes)
    coef = np.array([int(h.terms[pts[k]]) for k in order], dtype=np.int64)
    return h, ex_args, (np.array(cands, dtype=np.int64), codes[order], coef, dweights)


def best_of(fn, args, repeat: int) -> tuple[float, tuple]:
    times = []
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - start)
    return min(times), tuple(int(x) for x in out)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    h, ex_args, dlc_args = inputs(args.n)
    print(f"polynomial: {len(h)} terms in {h.nvars} variables, {len(dlc_args[0])} DLC candidates")
    # first call compiles (or loads the on-disk cache)
    _kernels.exchange_violation_numba(*ex_args)
    _kernels.dlc_violation_numba(*dlc_args)

    ok = True
    for name, fast, slow, a in (
        ("exchange", _kernels.exchange_violation_numba, _kernels.exchange_violation_numpy, ex_args),
        ("dlc", _kernels.dlc_violation_numba, _kernels.dlc_violation_numpy, dlc_args),
    ):
        t_fast, r_fast = best_of(fast, a, args.repeat)
        t_slow, r_slow = best_of(slow, a, args.repeat)
        same = r_fast == r_slow
        ok &= same
        print(f"{name:9s} numba {t_fast * 1e3:9.2f} ms  numpy {t_slow * 1e3:9.2f} ms  "
              f"speedup {t_slow / max(t_fast, 1e-9):6.1f}x  agree={same}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
