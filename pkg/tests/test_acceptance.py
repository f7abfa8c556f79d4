"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
are produced.
"""

import sys
import time

import numpy as np
import pytest

from drkernel import cli
from drkernel.algebra import check_gh_identities
from drkernel.busemann import BoundaryPoint, classify_case, gradient, vy_state
from drkernel.group import (
    connection_coeffs,
    identity_point,
    inverse,
    lie_bracket_s,
    multiply,
)
from drkernel.hessian import (
    block_decomposition,
    b1_spectrum_check,
    cluster_eigenvalues,
    det_B_closed,
    expected_special_spectrum,
    hessian_closed_form,
    restricted_positivity,
    spectrum,
    verify_block_identities,
)
from drkernel.oracle import FDConfig, numeric_hessian, richardson_gradient_ratio

from conftest import FAMILIES, get_algebra
from test_group import _as_frame_vector, _frame_element


def _emit(num, name, passed, detail=""):
    status = "PASS" if passed else "FAIL"
    line = f"ACCEPTANCE {num:02d} {name}: {status}"
    if detail:
        line += f" ({detail})"
    print(line, file=sys.stderr, flush=True)
    assert passed, line


_GENERAL_CACHE = {}


def general_pairs(key, count=100):
    """Deterministic general-case (x, theta) samples per algebra family."""
    if key not in _GENERAL_CACHE:
        alg = get_algebra(*key)
        rng = np.random.default_rng(1000 + 13 * key[0] + key[1])
        pairs = []
        while len(pairs) < count:
            x = cli.sample_group_point(alg, rng, scale=2.0, a_range=(0.2, 5.0))
            theta = cli.sample_boundary_point(alg, rng, scale=2.0)
            if classify_case(alg, x, theta) == "general":
                pairs.append((x, theta))
        _GENERAL_CACHE[key] = pairs
    return _GENERAL_CACHE[key]


def test_01_identity_suite():
    start = time.perf_counter()
    worst = 0.0
    for key in FAMILIES:
        alg = get_algebra(*key)
        rep = check_gh_identities(alg, trials=200, tol=1e-12,
                                  rng_seed=100 + key[0])
        worst = max(worst, rep.max_residual)
        if not rep.passed:
            _emit(1, "j-map identity suite", False,
                  f"{key}: {rep.residuals}")
    elapsed = time.perf_counter() - start
    _emit(1, "j-map identity suite", worst < 1e-12 and elapsed < 5.0,
          f"max residual {worst:.2e}, {elapsed:.2f}s")


def test_02_infinity_hessian():
    ok = True
    for key in FAMILIES:
        alg = get_algebra(*key)
        rng = np.random.default_rng(200 + key[0])
        exact = np.diag(np.concatenate([[0.0], np.full(alg.k, 0.5),
                                        np.ones(alg.m)]))
        for _ in range(50):
            x = cli.sample_group_point(alg, rng)
            H = hessian_closed_form(alg, x, BoundaryPoint.infinity())
            if not np.array_equal(H.entries, exact):
                ok = False
            clusters = cluster_eigenvalues(spectrum(H.entries))
            if [c[1] for c in clusters] != [1, alg.k, alg.m]:
                ok = False
    _emit(2, "hessian at infinity", ok, "exact diagonal, multiplicities (1,k,m)")


def test_03_degenerate_spectra():
    worst = 0.0
    for key in FAMILIES:
        alg = get_algebra(*key)
        rng = np.random.default_rng(300 + key[0])
        expected = expected_special_spectrum(alg.k, alg.m)
        for maker in (cli.degenerate_v_theta, cli.degenerate_y_theta):
            for _ in range(50):
                x = cli.sample_group_point(alg, rng)
                theta = maker(alg, x, rng)
                w = spectrum(hessian_closed_form(alg, x, theta).entries)
                worst = max(worst, float(np.max(np.abs(w - expected))))
    _emit(3, "degenerate-case spectra", worst < 1e-8,
          f"max eigenvalue deviation {worst:.2e}")


def test_04_oracle_equivalence():
    cfg = FDConfig(h=1e-4, tol_hess=1e-5)
    ok = True
    details = []
    for key in FAMILIES:
        alg = get_algebra(*key)
        pairs = general_pairs(key)
        start = time.perf_counter()
        worst = 0.0
        for x, theta in pairs:
            closed = hessian_closed_form(alg, x, theta).entries
            numeric = numeric_hessian(alg, x, theta, cfg).entries
            worst = max(worst, float(np.max(np.abs(closed - numeric))))
        elapsed = time.perf_counter() - start
        ratio = richardson_gradient_ratio(alg, pairs[:5], cfg)
        fam_ok = worst < 1e-5 and elapsed < 60.0 and 3.0 <= ratio <= 5.0
        ok = ok and fam_ok
        details.append(f"{key}: diff {worst:.1e}, {elapsed:.1f}s, ratio {ratio:.2f}")
    _emit(4, "finite-difference oracle equivalence", ok, "; ".join(details))


def test_05_block_identities():
    worst_q = 0.0
    worst_s = 0.0
    for key in FAMILIES:
        alg = get_algebra(*key)
        for x, theta in general_pairs(key):
            rep = verify_block_identities(alg, x, theta)
            worst_q = max(worst_q, rep.quadratic_residual)
            worst_s = max(worst_s, rep.scalar_residual)
    _emit(5, "coupling-block identities", worst_q < 1e-10 and worst_s < 1e-12,
          f"quadratic {worst_q:.2e}, scalar {worst_s:.2e}")


def test_06_b1_block_spectrum():
    worst_det = 0.0
    worst_tr = 0.0
    worst_spec = 0.0
    for key in FAMILIES:
        alg = get_algebra(*key)
        for x, theta in general_pairs(key):
            rep = b1_spectrum_check(alg, x, theta)
            worst_det = max(worst_det, abs(rep.det_at_zero),
                            abs(rep.det_at_half), abs(rep.det_at_one))
            worst_tr = max(worst_tr, abs(rep.trace - 2.0))
            worst_spec = max(worst_spec, float(np.max(np.abs(
                np.sort(rep.eigenvalues) - [0.0, 0.5, 0.5, 1.0]))))
    ok = worst_det < 1e-9 and worst_tr < 1e-10 and worst_spec < 1e-8
    _emit(6, "4x4 block spectrum", ok,
          f"det {worst_det:.2e}, trace {worst_tr:.2e}, spectrum {worst_spec:.2e}")


def test_07_determinant_chain():
    ok = True
    worst_rel = 0.0
    for key in FAMILIES:
        alg = get_algebra(*key)
        for x, theta in general_pairs(key):
            state = vy_state(alg, x, theta)
            closed, factors = det_B_closed(alg, x, theta)
            bd = block_decomposition(alg, x, theta)
            numeric = float(np.prod(spectrum(bd.cal_b)))
            scale = max(abs(closed), abs(numeric))
            rel = abs(closed - numeric) / scale if scale else 0.0
            worst_rel = max(worst_rel, rel)
            if not (closed > 0 and numeric > 0 and np.all(factors > 0)):
                ok = False
            # Gram eigenvalues: recompute and bound by |cal_v|^2 |cal_y|^2
            gram = (4.0 * state.F**2 / x.a) * (bd.B2.T @ bd.B2)
            mu = spectrum(gram) if gram.size else np.zeros(0)
            upper = float((state.cal_v @ state.cal_v)
                          * (state.cal_y @ state.cal_y))
            if mu.size and (mu[0] < -1e-10 or mu[-1] > upper + 1e-10):
                ok = False
    _emit(7, "determinant product formula", ok and worst_rel < 1e-8,
          f"worst relative gap {worst_rel:.2e}")


def test_08_positive_definite_on_complement():
    ok = True
    worst_resid = 0.0
    worst_norm = 0.0
    min_general = np.inf
    for key in FAMILIES:
        alg = get_algebra(*key)
        rng = np.random.default_rng(800 + key[0])
        cases = [(x, theta, "general") for x, theta in general_pairs(key)[:30]]
        for _ in range(20):
            x = cli.sample_group_point(alg, rng)
            cases.append((x, cli.degenerate_v_theta(alg, x, rng), "V0"))
            cases.append((x, cli.degenerate_y_theta(alg, x, rng), "Y0"))
        for _ in range(10):
            x = cli.sample_group_point(alg, rng)
            cases.append((x, BoundaryPoint.finite(x.V.copy(), x.Y.copy()), "VY0"))
            cases.append((x, BoundaryPoint.infinity(), "inf"))
        for x, theta, case in cases:
            min_eig, resid = restricted_positivity(alg, x, theta)
            g = gradient(alg, x, theta)
            worst_resid = max(worst_resid, resid)
            worst_norm = max(worst_norm, abs(float(np.linalg.norm(g)) - 1.0))
            if case == "general":
                min_general = min(min_general, min_eig)
                if min_eig <= 0.0:
                    ok = False
            elif min_eig < 0.5 - 1e-8:
                ok = False
    ok = ok and worst_resid < 1e-7 and worst_norm < 1e-8
    _emit(8, "positive definiteness on the gradient complement", ok,
          f"min general eig {min_general:.3f}, |H grad| {worst_resid:.1e}, "
          f"|grad|-1 {worst_norm:.1e}")


def test_09_group_connection_suite():
    worst = 0.0
    for key in FAMILIES:
        alg = get_algebra(*key)
        rng = np.random.default_rng(900 + key[0])
        for _ in range(200):
            pts = [cli.sample_group_point(alg, rng) for _ in range(3)]
            lhs = multiply(alg, multiply(alg, pts[0], pts[1]), pts[2])
            rhs = multiply(alg, pts[0], multiply(alg, pts[1], pts[2]))
            worst = max(worst,
                        float(np.max(np.abs(lhs.V - rhs.V))),
                        float(np.max(np.abs(lhs.Y - rhs.Y))),
                        abs(lhs.a - rhs.a))
            back = multiply(alg, pts[0], inverse(alg, pts[0]))
            worst = max(worst,
                        float(np.max(np.abs(back.V))),
                        float(np.max(np.abs(back.Y))),
                        abs(back.a - 1.0))
        n = alg.dim_s
        coeffs = np.array([[connection_coeffs(alg, a, b) for b in range(n)]
                           for a in range(n)])
        for a in range(n):
            worst = max(worst, float(np.max(np.abs(coeffs[a] + coeffs[a].T))))
            for b in range(n):
                torsion = coeffs[a, b] - coeffs[b, a]
                br = lie_bracket_s(alg, _frame_element(alg, a),
                                   _frame_element(alg, b))
                worst = max(worst, float(np.max(np.abs(
                    torsion - _as_frame_vector(alg, br)))))
    _emit(9, "group and connection suite", worst < 1e-12,
          f"max residual {worst:.2e}")
