"""Timing comparison of the compiled kernels against the numpy fallback.

Measures the two hot paths (batched Busemann evaluation, Jacobi
eigendecomposition) plus the end-to-end numeric Hessian that drives the
verification runtime.  Usage:

    python benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from drkernel import cli, make_algebra, oracle
from drkernel._kernels import _fallback

try:
    from drkernel._kernels import _core
except ImportError:
    _core = None


def best_of(repeat, fn, *args):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_busemann(impl, alg, coords, theta, repeat):
    return best_of(repeat, impl.busemann_batch, alg.J, coords, theta.v, theta.y)


def bench_jacobi(impl, mats, repeat):
    def run():
        for M in mats:
            impl.jacobi_eigh(M)
    return best_of(repeat, run)


def _swap_kernels(impl):
    """Point every module at `impl`'s kernels; returns the previous pair."""
    from drkernel import _kernels

    saved = (_kernels.busemann_batch, _kernels.jacobi_eigh)
    _kernels.busemann_batch = impl.busemann_batch
    _kernels.jacobi_eigh = impl.jacobi_eigh
    return saved


def _restore_kernels(saved):
    from drkernel import _kernels

    _kernels.busemann_batch, _kernels.jacobi_eigh = saved


def bench_numeric_hessian(impl, alg, pairs, repeat):
    saved = _swap_kernels(impl)
    try:
        def run():
            for x, theta in pairs:
                oracle.numeric_hessian(alg, x, theta)
        return best_of(repeat, run)
    finally:
        _restore_kernels(saved)


def bench_evaluate_point(impl, alg, pairs, repeat):
    """Full per-point verification: oracle + spectra + block checks."""
    saved = _swap_kernels(impl)
    try:
        def run():
            for x, theta in pairs:
                cli.evaluate_point(alg, x, theta)
        return best_of(repeat, run)
    finally:
        _restore_kernels(saved)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--batch", type=int, default=4096)
    parser.add_argument("--points", type=int, default=20)
    args = parser.parse_args()

    impls = [("python", _fallback)]
    if _core is not None:
        impls.append(("compiled", _core))
    else:
        print("note: compiled kernels not built; timing fallback only")

    rng = np.random.default_rng(0)
    alg = make_algebra(7, 1)
    theta = cli.sample_boundary_point(alg, rng)
    coords = np.column_stack([
        rng.uniform(-2, 2, (args.batch, alg.k)),
        rng.uniform(-2, 2, (args.batch, alg.m)),
        rng.uniform(-1.5, 1.5, args.batch),
    ])
    mats = []
    for _ in range(100):
        M = rng.standard_normal((alg.dim_s, alg.dim_s))
        mats.append(0.5 * (M + M.T))
    pairs = [(cli.sample_group_point(alg, rng),
              cli.sample_boundary_point(alg, rng))
             for _ in range(args.points)]

    rows = []
    for name, impl in impls:
        t_b = bench_busemann(impl, alg, coords, theta, args.repeat)
        t_j = bench_jacobi(impl, mats, args.repeat)
        t_h = bench_numeric_hessian(impl, alg, pairs, args.repeat)
        t_e = bench_evaluate_point(impl, alg, pairs, args.repeat)
        rows.append((name, t_b, t_j, t_h, t_e))

    n_pts = str(args.points)
    print(f"\nalgebra (7,1), dim S = {alg.dim_s}; best of {args.repeat} runs")
    print(f"{'backend':<10} {'busemann_batch':>15} {'jacobi_eigh x100':>17} "
          f"{'numeric_hessian x' + n_pts:>20} {'verify_point x' + n_pts:>18}")
    for name, t_b, t_j, t_h, t_e in rows:
        print(f"{name:<10} {t_b * 1e3:>13.2f}ms {t_j * 1e3:>15.2f}ms "
              f"{t_h * 1e3:>18.2f}ms {t_e * 1e3:>16.2f}ms")
    if len(rows) == 2:
        py, comp = rows
        print(f"{'speedup':<10} {py[1] / comp[1]:>14.1f}x "
              f"{py[2] / comp[2]:>16.1f}x {py[3] / comp[3]:>19.1f}x "
              f"{py[4] / comp[4]:>17.1f}x")


if __name__ == "__main__":
    main()
