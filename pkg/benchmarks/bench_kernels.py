#!/usr/bin/env python3
"""Timing comparison of the compiled kernels against the numpy fallbacks.

Workloads mirror the real call sites: Gaussian elimination on check
matrices, the Gray-walk used for exact distances, and batches of
information-set decoding trials on a [[96,2,12]] lift.  Run with
``QTANNER_PURE_NUMPY=1`` (or without numba installed) to see the fallback
numbers alone.
"""

import argparse
import time

import numpy as np

from qtanner import _kernels, covering, csscode, families, gf2, groups
from qtanner.localcodes import Poly


def _build_96():
    build = families.build_BS(4, Poly.from_exponents(4, [1, 2, 3]))
    for cm in covering.enumerate_galois_covers(
        build.complex, build.presentation, groups.cyclic(3)
    ):
        if cm.hom == (1, 1):
            return csscode.lift_code(cm, build.assignment)
    raise RuntimeError("expected a Z3 cover with hom (1, 1)")


def _time(fn, reps):
    start = time.perf_counter()
    for _ in range(reps):
        out = fn()
    return time.perf_counter() - start, out


def _row(name, backend, secs, reps, base_secs=None):
    rate = reps / secs if secs else float("inf")
    speedup = "" if base_secs is None else f"{base_secs / secs:6.1f}x"
    print(f"{name:<12} {backend:<6} {secs:9.3f}s {rate:12.1f}/s {speedup:>8}")


def bench_rref(code, reps):
    words = code.hx.words
    ncols = code.n

    def run(fn):
        def once():
            return fn(words.copy(), ncols)[0]
        return once

    t_np, r_np = _time(run(_kernels.rref_np), reps)
    _row("rref 48x96", "numpy", t_np, reps)
    if _kernels.HAS_NUMBA:
        t_nb, r_nb = _time(run(_kernels.rref_nb), reps)
        assert r_nb == r_np
        _row("rref 48x96", "numba", t_nb, reps, t_np)


def bench_gray(reps):
    base = families.build_BS(4, Poly.from_exponents(4, [1, 2, 3]))
    code = csscode.assemble(base.complex, base.assignment)
    basis = gf2.kernel_basis(code.hz)
    red, r, pivots = gf2.rref(code.hx)
    red_words = np.ascontiguousarray(red.words[:r])

    def run(fn):
        def once():
            return fn(basis.words, red_words, pivots)[0]
        return once

    t_np, w_np = _time(run(_kernels.gray_scan_np), reps)
    _row(f"gray 2^{basis.nrows}", "numpy", t_np, reps)
    if _kernels.HAS_NUMBA:
        t_nb, w_nb = _time(run(_kernels.gray_scan_nb), reps)
        assert w_nb == w_np == 4
        _row(f"gray 2^{basis.nrows}", "numba", t_nb, reps, t_np)


def bench_isd(code, iters, seed):
    basis = gf2.kernel_basis(code.hz)
    red, r, pivots = gf2.rref(code.hx)
    red_words = np.ascontiguousarray(red.words[:r])
    rng = np.random.default_rng(seed)
    perms = np.empty((iters, code.n), dtype=np.int64)
    for i in range(iters):
        perms[i] = rng.permutation(code.n)
    empty = np.zeros(basis.words.shape[1], dtype=np.uint64)

    def run(fn):
        def once():
            return fn(basis.words, code.n, perms, red_words, pivots, 0, empty)[0]
        return once

    t_np, b_np = _time(run(_kernels.isd_scan_np), 1)
    _row(f"isd x{iters}", "numpy", t_np, iters)
    if _kernels.HAS_NUMBA:
        t_nb, b_nb = _time(run(_kernels.isd_scan_nb), 1)
        assert b_nb == b_np
        _row(f"isd x{iters}", "numba", t_nb, iters, t_np)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--iters", type=int, default=2000,
                    help="information-set decoding trials per backend")
    ap.add_argument("--rref-reps", type=int, default=300)
    ap.add_argument("--gray-reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"numba backend available: {_kernels.HAS_NUMBA}")
    code = _build_96()
    print(f"workload code: [[{code.n},{code.k}]]\n")
    if _kernels.HAS_NUMBA:
        # compile every kernel outside the timed region
        _kernels.rref_nb(code.hx.words.copy(), code.n)
        basis = gf2.kernel_basis(code.hz)
        red, r, pivots = gf2.rref(code.hx)
        rw = np.ascontiguousarray(red.words[:r])
        _kernels.gray_scan_nb(basis.words[:1], rw, pivots)
        one = np.arange(code.n, dtype=np.int64)[None, :]
        _kernels.isd_scan_nb(
            basis.words, code.n, one, rw, pivots, 0,
            np.zeros(basis.words.shape[1], dtype=np.uint64),
        )
    print(f"{'kernel':<12} {'impl':<6} {'time':>10} {'rate':>13} {'speedup':>8}")
    bench_rref(code, args.rref_reps)
    bench_gray(args.gray_reps)
    bench_isd(code, args.iters, args.seed)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
