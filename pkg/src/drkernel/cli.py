"""Command-line driver: build algebras, sample points, run the full checks.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 invalid
configuration or I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels, algebra, busemann, group, hessian, oracle

__all__ = [
    "RunConfig",
    "sample_group_point",
    "sample_boundary_point",
    "degenerate_v_theta",
    "degenerate_y_theta",
    "evaluate_point",
    "cmd_verify",
    "cmd_spectrum",
    "cmd_algebras",
    "main",
]

_ALGEBRA_NAMES = {1: "complex hyperbolic model", 2: "two-generator quaternionic model",
                  3: "quaternionic hyperbolic model", 7: "octonionic hyperbolic model"}


@dataclass(frozen=True)
class RunConfig:
    m: int = 1
    multiplicity: int = 1
    seed: int = 0
    points: int = 100
    theta_mode: str = "mixed"          # mixed | infinity | random | fixed
    theta_fixed: Optional[busemann.BoundaryPoint] = None
    scale: float = 2.0
    a_range: tuple = (0.2, 5.0)
    fd: oracle.FDConfig = field(default_factory=oracle.FDConfig)
    thresholds: hessian.CheckThresholds = field(default_factory=hessian.CheckThresholds)
    infinity_fraction: float = 0.1     # share of theta=infinity draws in mixed mode
    out: Optional[str] = None
    fmt: str = "json"

    def validate(self):
        if self.points < 1:
            raise ValueError("points must be >= 1")
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        lo, hi = self.a_range
        if not (0 < lo <= hi):
            raise ValueError("a_range must be positive and ordered")
        if self.theta_mode not in ("mixed", "infinity", "random", "fixed"):
            raise ValueError(f"unknown theta mode {self.theta_mode!r}")
        if self.theta_mode == "fixed" and self.theta_fixed is None:
            raise ValueError("fixed theta mode needs a boundary point")
        if self.fmt not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.fmt!r}")


def sample_group_point(alg, rng, scale=2.0, a_range=(0.2, 5.0)) -> group.GroupPoint:
    V = rng.uniform(-scale, scale, alg.k)
    Y = rng.uniform(-scale, scale, alg.m)
    a = rng.uniform(a_range[0], a_range[1])
    return group.GroupPoint(V, Y, a)


def sample_boundary_point(alg, rng, scale=2.0) -> busemann.BoundaryPoint:
    v = rng.uniform(-scale, scale, alg.k)
    y = rng.uniform(-scale, scale, alg.m)
    return busemann.BoundaryPoint.finite(v, y)


def degenerate_v_theta(alg, x, rng, scale=2.0) -> busemann.BoundaryPoint:
    """Boundary point with cal_v = 0 at x (v = V, y random)."""
    y = rng.uniform(-scale, scale, alg.m)
    return busemann.BoundaryPoint.finite(x.V.copy(), y)


def degenerate_y_theta(alg, x, rng, scale=2.0) -> busemann.BoundaryPoint:
    """Boundary point with cal_y = 0 at x (y = Y + [V,v]/2, v random)."""
    v = rng.uniform(-scale, scale, alg.k)
    y = x.Y + 0.5 * algebra.bracket_n(alg, x.V, v)
    return busemann.BoundaryPoint.finite(v, y)


def _sample_theta(alg, rng, cfg: RunConfig) -> busemann.BoundaryPoint:
    if cfg.theta_mode == "infinity":
        return busemann.BoundaryPoint.infinity()
    if cfg.theta_mode == "fixed":
        return cfg.theta_fixed
    if cfg.theta_mode == "mixed" and rng.random() < cfg.infinity_fraction:
        return busemann.BoundaryPoint.infinity()
    return sample_boundary_point(alg, rng, cfg.scale)


def evaluate_point(alg, x, theta, fd_cfg=None, thresholds=None) -> hessian.HessianReport:
    """Run every per-point check and assemble the report record."""
    fd_cfg = fd_cfg or oracle.FDConfig()
    thr = thresholds or hessian.CheckThresholds()
    case = busemann.classify_case(alg, x, theta)
    closed = hessian.hessian_closed_form(alg, x, theta)
    grad = busemann.gradient(alg, x, theta)
    numeric = oracle.numeric_hessian(alg, x, theta, fd_cfg)
    cmp_rep = oracle.compare(closed, numeric, fd_cfg)
    spec = hessian.spectrum(closed.entries)
    min_perp, grad_residual = hessian.restricted_positivity(alg, x, theta)
    grad_norm_dev = abs(float(np.linalg.norm(grad)) - 1.0)

    checks = {
        "oracle": cmp_rep.passed,
        "symmetry": float(np.max(np.abs(closed.entries - closed.entries.T)))
                    < thr.symmetry,
        "kernel_direction": grad_residual < thr.kernel_residual,
        "grad_norm": grad_norm_dev < thr.grad_norm,
        "eigenvalue_floor": float(spec[0]) >= thr.eigenvalue_floor,
    }
    identities = None
    if case == "general":
        bd = hessian.block_decomposition(alg, x, theta)
        idrep = hessian._identities_from_blocks(bd, thr.quadratic_identity)
        b1rep = hessian._b1_report_from_blocks(bd, thr.b1_det, thr.b1_trace,
                                               thr.b1_spectrum)
        state = busemann.vy_state(alg, x, theta)
        det_closed, factors, _ = hessian._det_chain_from_blocks(alg, x.a, state, bd)
        det_numeric = float(np.prod(hessian.spectrum(bd.cal_b)))
        det_scale = max(abs(det_closed), abs(det_numeric))
        identities = {
            "eq20": idrep.quadratic_residual,
            "eq21": idrep.scalar_residual,
            "trB1": b1rep.trace,
            "detB_closed": det_closed,
            "detB_numeric": det_numeric,
        }
        checks.update({
            "quadratic_identity": idrep.quadratic_residual < thr.quadratic_identity,
            "scalar_identity": idrep.scalar_residual < thr.scalar_identity,
            "b1_block": b1rep.passed,
            "det_match": abs(det_closed - det_numeric) <= thr.det_rel * det_scale,
            "det_positive": det_closed > 0.0 and det_numeric > 0.0,
            "factors_positive": bool(np.all(factors > 0.0)),
            "positivity": min_perp > 0.0,
        })
    else:
        expected = hessian.expected_special_spectrum(alg.k, alg.m)
        checks.update({
            "spectrum_multiset": float(np.max(np.abs(spec - expected)))
                                 < thr.spectrum_multiset,
            "positivity": min_perp >= thr.min_eig_degenerate,
        })
    return hessian.HessianReport(
        point=x, theta=theta, case=case, spectrum=spec,
        min_on_complement=min_perp, grad_residual=grad_residual,
        grad_norm_dev=grad_norm_dev, max_oracle_diff=cmp_rep.max_abs_diff,
        oracle_asymmetry=numeric.asymmetry or 0.0, identities=identities,
        checks=checks, passed=all(checks.values()))


def _group_axiom_residuals(alg, rng, trials=50):
    worst_assoc = 0.0
    worst_inv = 0.0
    for _ in range(trials):
        pts = [sample_group_point(alg, rng) for _ in range(3)]
        lhs = group.multiply(alg, group.multiply(alg, pts[0], pts[1]), pts[2])
        rhs = group.multiply(alg, pts[0], group.multiply(alg, pts[1], pts[2]))
        worst_assoc = max(worst_assoc, _point_distance(lhs, rhs))
        back = group.multiply(alg, pts[0], group.inverse(alg, pts[0]))
        ident = group.identity_point(alg)
        worst_inv = max(worst_inv, _point_distance(back, ident))
    return worst_assoc, worst_inv


def _point_distance(x, y):
    return float(max(np.max(np.abs(x.V - y.V)), np.max(np.abs(x.Y - y.Y)),
                     abs(x.a - y.a)))


def _algebra_suite(alg, seed):
    """Algebra-level checks run once per configuration."""
    idrep = algebra.check_gh_identities(alg, trials=100, tol=1e-10,
                                        rng_seed=seed)
    rng = np.random.default_rng(seed + 1)
    assoc, inv = _group_axiom_residuals(alg, rng)
    return {
        "identities_max_residual": idrep.max_residual,
        "identities_pass": idrep.passed,
        "associativity_residual": assoc,
        "inverse_residual": inv,
        "group_pass": bool(assoc < 1e-12 and inv < 1e-12),
    }


_CSV_COLUMNS = ("point_id", "case", "min_eig_complement", "max_oracle_diff",
                "eq20_residual", "eq21_residual", "detB_closed", "pass")


def _csv_row(idx, rec):
    ident = rec["identities"] or {}
    return {
        "point_id": idx,
        "case": rec["case"],
        "min_eig_complement": repr(rec["min_on_complement"]),
        "max_oracle_diff": repr(rec["max_oracle_diff"]),
        "eq20_residual": repr(ident["eq20"]) if "eq20" in ident else "",
        "eq21_residual": repr(ident["eq21"]) if "eq21" in ident else "",
        "detB_closed": repr(ident["detB_closed"]) if "detB_closed" in ident else "",
        "pass": str(rec["pass"]).lower(),
    }


def run_verification(cfg: RunConfig) -> dict:
    """Sample points per the config and produce the full report object."""
    cfg.validate()
    alg = algebra.make_algebra(cfg.m, cfg.multiplicity)
    rng = np.random.default_rng(cfg.seed)
    algebra_checks = _algebra_suite(alg, cfg.seed)
    records = []
    for idx in range(cfg.points):
        x = sample_group_point(alg, rng, cfg.scale, cfg.a_range)
        theta = _sample_theta(alg, rng, cfg)
        rep = evaluate_point(alg, x, theta, cfg.fd, cfg.thresholds)
        records.append(rep.to_json_dict())
    cases = {}
    for rec in records:
        cases[rec["case"]] = cases.get(rec["case"], 0) + 1
    n_pass = sum(1 for rec in records if rec["pass"])
    all_pass = (n_pass == len(records)
                and algebra_checks["identities_pass"]
                and algebra_checks["group_pass"])
    return {
        "config": {
            "algebra": {"m": cfg.m, "multiplicity": cfg.multiplicity},
            "seed": cfg.seed,
            "points": cfg.points,
            "theta_mode": cfg.theta_mode,
            "scale": cfg.scale,
            "a_range": list(cfg.a_range),
            "h": cfg.fd.h,
            "tol_hess": cfg.fd.tol_hess,
        },
        "backend": _kernels.BACKEND,
        "algebra_checks": algebra_checks,
        "points": records,
        "summary": {
            "points": len(records),
            "passed": n_pass,
            "failed": len(records) - n_pass,
            "cases": cases,
            "all_pass": all_pass,
        },
    }


def _render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_CSV_COLUMNS)
    writer.writeheader()
    for idx, rec in enumerate(report["points"]):
        writer.writerow(_csv_row(idx, rec))
    summary = report["summary"]
    writer.writerow({
        "point_id": "summary",
        "case": f"points={summary['points']}",
        "min_eig_complement": "",
        "max_oracle_diff": "",
        "eq20_residual": "",
        "eq21_residual": "",
        "detB_closed": "",
        "pass": str(summary["all_pass"]).lower(),
    })
    return buf.getvalue()


def cmd_verify(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        report = run_verification(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = _render_report(report, cfg.fmt)
    try:
        if cfg.out:
            with open(cfg.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    summary = report["summary"]
    print(f"checked {summary['points']} points: "
          f"{summary['passed']} passed, {summary['failed']} failed; "
          f"all suites {'pass' if summary['all_pass'] else 'FAIL'}",
          file=sys.stderr)
    return 0 if summary["all_pass"] else 1


def cmd_spectrum(cfg: RunConfig, x=None, theta=None) -> int:
    try:
        cfg.validate()
        alg = algebra.make_algebra(cfg.m, cfg.multiplicity)
        rng = np.random.default_rng(cfg.seed)
        if x is None:
            x = sample_group_point(alg, rng, cfg.scale, cfg.a_range)
        if theta is None:
            theta = _sample_theta(alg, rng, cfg)
        rep = evaluate_point(alg, x, theta, cfg.fd, cfg.thresholds)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"point: V={x.V.tolist()} Y={x.Y.tolist()} a={x.a}")
    print(f"theta: {theta.to_json_dict()}")
    print(f"case: {rep.case}")
    if not theta.is_infinity:
        state = busemann.vy_state(alg, x, theta)
        print(f"state: |cal_v|={np.linalg.norm(state.cal_v):.6g} "
              f"|cal_y|={np.linalg.norm(state.cal_y):.6g} "
              f"f={state.f:.6g} F={state.F:.6g}")
    print("spectrum: " + " ".join(f"{w:.12g}" for w in rep.spectrum))
    print(f"min eigenvalue on grad-complement: {rep.min_on_complement:.12g}")
    print(f"|H grad|: {rep.grad_residual:.3e}")
    print(f"max |closed - numeric|: {rep.max_oracle_diff:.3e}")
    if rep.identities is not None:
        ident = rep.identities
        print(f"block identities: eq20={ident['eq20']:.3e} "
              f"eq21={ident['eq21']:.3e} trB1={ident['trB1']:.12g}")
        print(f"detB: closed={ident['detB_closed']:.12g} "
              f"numeric={ident['detB_numeric']:.12g}")
    print(f"pass: {rep.passed}")
    return 0 if rep.passed else 1


def cmd_algebras() -> int:
    print("supported algebra families (m, multiplicity):")
    for m in algebra.SUPPORTED_M:
        alg = algebra.make_algebra(m, 1)
        print(f"  ({m},1) -> k={alg.k}, m={alg.m}, dim S={alg.dim_s}"
              f"  [{_ALGEBRA_NAMES[m]}]")
    print("multiplicity c scales k by c (block-diagonal Clifford module).")
    return 0


def _parse_algebra(text):
    parts = text.split(",")
    if len(parts) == 1:
        return int(parts[0]), 1
    if len(parts) == 2:
        return int(parts[0]), int(parts[1])
    raise ValueError(f"bad algebra spec {text!r}; expected m,multiplicity")


def _parse_vector(text):
    text = text.strip()
    if not text:
        return np.array([])
    return np.array([float(tok) for tok in text.split(",")])


def _parse_theta(text):
    text = text.strip()
    if text == "infinity":
        return "infinity", None
    if text == "random":
        return "random", None
    fields = {}
    for part in text.split(";"):
        if "=" not in part:
            raise ValueError(f"bad theta spec {text!r}")
        key, val = part.split("=", 1)
        fields[key.strip()] = _parse_vector(val)
    if set(fields) != {"v", "y"}:
        raise ValueError(f"theta spec needs v=...;y=..., got {text!r}")
    return "fixed", busemann.BoundaryPoint.finite(fields["v"], fields["y"])


def _parse_point(text):
    fields = {}
    for part in text.split(";"):
        if "=" not in part:
            raise ValueError(f"bad point spec {text!r}")
        key, val = part.split("=", 1)
        fields[key.strip()] = val.strip()
    if set(fields) != {"V", "Y", "a"}:
        raise ValueError(f"point spec needs V=...;Y=...;a=..., got {text!r}")
    return (_parse_vector(fields["V"]), _parse_vector(fields["Y"]),
            float(fields["a"]))


def _default_seed():
    env = os.environ.get("DRKERNEL_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"DRKERNEL_SEED must be an integer, got {env!r}")
    return 0


def _add_common(parser):
    parser.add_argument("--algebra", default="1,1", metavar="m,mult")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--theta", default=None,
                        help="infinity | random | v=...;y=...")
    parser.add_argument("--scale", type=float, default=2.0)
    parser.add_argument("--a-range", default="0.2,5.0", metavar="lo,hi")
    parser.add_argument("--tol-hess", type=float, default=1e-5)
    parser.add_argument("--h", type=float, default=1e-4)


def _config_from_args(args) -> RunConfig:
    m, mult = _parse_algebra(args.algebra)
    seed = args.seed if args.seed is not None else _default_seed()
    theta_mode, theta_fixed = "mixed", None
    if args.theta is not None:
        theta_mode, theta_fixed = _parse_theta(args.theta)
    lo, hi = (float(tok) for tok in args.a_range.split(","))
    fd = oracle.FDConfig(h=args.h, tol_hess=args.tol_hess)
    return RunConfig(m=m, multiplicity=mult, seed=seed,
                     points=getattr(args, "points", 1),
                     theta_mode=theta_mode, theta_fixed=theta_fixed,
                     scale=args.scale, a_range=(lo, hi), fd=fd,
                     out=getattr(args, "out", None),
                     fmt=getattr(args, "format", "json"))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="drkernel",
        description="verification kernel for Busemann-function Hessians "
                    "on Damek-Ricci spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the full verification suite")
    _add_common(p_verify)
    p_verify.add_argument("--points", type=int, default=100)
    p_verify.add_argument("--out", default=None, metavar="PATH")
    p_verify.add_argument("--format", choices=("json", "csv"), default="json")

    p_spec = sub.add_parser("spectrum", help="analyse a single point")
    _add_common(p_spec)
    p_spec.add_argument("--point", default=None, metavar="V=..;Y=..;a=..")

    sub.add_parser("algebras", help="list supported algebra families")

    args = parser.parse_args(argv)
    if args.command == "algebras":
        return cmd_algebras()
    try:
        cfg = _config_from_args(args)
        if args.command == "spectrum":
            alg = algebra.make_algebra(cfg.m, cfg.multiplicity)
            x = None
            if args.point is not None:
                V, Y, a = _parse_point(args.point)
                if V.shape != (alg.k,) or Y.shape != (alg.m,):
                    raise ValueError("point dimensions do not match the algebra")
                x = group.GroupPoint(V, Y, a)
            theta = cfg.theta_fixed if cfg.theta_mode == "fixed" else None
            if cfg.theta_mode == "infinity":
                theta = busemann.BoundaryPoint.infinity()
            return cmd_spectrum(cfg, x=x, theta=theta)
        return cmd_verify(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
