# cli.py - command-line frontend (installed as `cde`)
import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from cde import CdeBranch, FourMomentum, dispersion_check, dispersion_table, plane_wave_momentum, plane_wave_solutions
from clifford import ChiralParams, gamma_chiral
from config import DEFAULT_SEED, DEFAULT_TRIALS, INPUT_SHELL_TOL, LOG_LEVEL, scaled_tolerance
from lagrangian import FieldGrid, action, euler_lagrange_convergence, euler_lagrange_residual
from projectors import Direction3, ProjectorPair, Spin, eigvec2, parse_axis, projector2
from symmetries import (
    LorentzKind,
    adjoint_intertwines,
    alpha_transform,
    classify_alpha,
    covariance_check,
    lorentz_spinor_map,
)
from tensor_core import matrix_to_dict, vector_to_list
from verify import verify_all

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


# --- argument parsing helpers ---

def parse_complex(text: str) -> complex:
    """'re' or 're,im'."""
    parts = [s.strip() for s in str(text).split(",")]
    if len(parts) not in (1, 2) or not all(parts):
        raise argparse.ArgumentTypeError(f"expected re or re,im, got {text!r}")
    try:
        values = [float(s) for s in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    return complex(values[0], values[1] if len(values) == 2 else 0.0)


def float_list(count: int):
    def parse(text: str) -> List[float]:
        try:
            values = [float(s) for s in str(text).split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {text!r}")
        if len(values) != count:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {len(values)}")
        return values

    return parse


def int_list(text: str) -> List[int]:
    try:
        values = [int(s) for s in str(text).split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n,n,n,n, got {text!r}")
    if len(values) != 4 or min(values) < 1:
        raise argparse.ArgumentTypeError("grid needs four positive extents")
    return values


def _fmt(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.6g}"
    if z.real == 0:
        return f"{z.imag:.6g}i"
    return f"{z.real:.6g}{z.imag:+.6g}i"


def _complex_pair(z: complex) -> List[float]:
    return [float(complex(z).real), float(complex(z).imag)]


def _matrix_table(m: np.ndarray) -> pd.DataFrame:
    return pd.DataFrame([[_fmt(z) for z in row] for row in m])


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _params(args) -> ChiralParams:
    return ChiralParams(args.m, args.alpha)


# --- subcommands ---

def cmd_gamma(args) -> int:
    gs = gamma_chiral()
    names = ["gamma0", "gamma1", "gamma2", "gamma3", "gamma5"]
    mats = list(gs.gammas) + [gs.gamma5]
    payload = {"representation": gs.representation, **{n: matrix_to_dict(m) for n, m in zip(names, mats)}}
    text = "\n\n".join(f"{n}:\n{_matrix_table(m).to_string(index=False, header=False)}" for n, m in zip(names, mats))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_projector(args) -> int:
    axis = parse_axis(args.axis)
    s = Spin.parse(args.sign)
    proj = projector2(axis, s)
    vec = eigvec2(axis, s)
    residuals = ProjectorPair.about(axis).residuals()
    payload = {"projector": matrix_to_dict(proj), "eigenvector": vector_to_list(vec), "residuals": residuals}
    table = pd.Series(residuals, name="residual").to_frame()
    text = (
        f"P{s.symbol}(a):\n{_matrix_table(proj).to_string(index=False, header=False)}\n\n"
        f"chi{s.symbol}: {', '.join(_fmt(z) for z in vec)}\n\n{table.to_string()}"
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_solve(args) -> int:
    params = _params(args)
    p = FourMomentum.of(args.E, args.p)
    branch = CdeBranch(args.branch)
    solutions = plane_wave_solutions(branch, p, params, shell_tol=args.shell_tol)
    report = dispersion_check(p, params, shell_tol=args.shell_tol)
    payload = {
        "branch": branch.value,
        "shell_gap": report.shell_gap,
        "on_shell": report.on_shell,
        "wave_vector": plane_wave_momentum(branch, p).contravariant.tolist(),
        "solutions": [vector_to_list(u.vector) for u in solutions],
    }
    if solutions:
        table = pd.DataFrame(
            {f"u{i}": [_fmt(z) for z in u.vector] for i, u in enumerate(solutions)},
            index=["chiL1", "chiL2", "chiR1", "chiR2"],
        )
        text = f"{branch.value} branch, {len(solutions)} solution(s):\n{table.to_string()}"
    else:
        text = f"{branch.value} branch: no solutions (E^2 - |p|^2 - m^2 = {report.shell_gap:.6g})"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_dispersion(args) -> int:
    rows = dispersion_table(_params(args), args.pmax, args.steps)
    frame = pd.DataFrame(rows, columns=["p_abs", "E"])
    if args.json:
        print(frame.to_json(orient="records", indent=2))
    elif args.out:
        frame.to_csv(args.out, index=False)
        logger.info("Wrote %d rows to %s", len(frame), args.out)
    else:
        print(frame.to_csv(index=False), end="")
    return EXIT_OK


def cmd_lagrangian_check(args) -> int:
    params = _params(args)
    if not params.is_real_angle:
        raise ValueError("lagrangian-check needs a real chiral angle")
    p = FourMomentum.on_shell(args.p, params.mass)
    solutions = plane_wave_solutions(CdeBranch.MIXED, p, params)
    if not solutions:
        raise ValueError("No plane-wave solution for these parameters")
    u = solutions[0].vector
    w = plane_wave_momentum(CdeBranch.MIXED, p)
    grid = FieldGrid.plane_wave(u, w, args.grid, args.h)
    residual = euler_lagrange_residual(grid, params)
    study = euler_lagrange_convergence(u, w, params, args.h, extent=args.grid)
    tol = scaled_tolerance("lagrangian.convergence_order", args.tol_scale)
    s = action(grid, params)
    payload = {
        "action": _complex_pair(s),
        "max_residual": residual.max_residual,
        "max_deviation": residual.max_deviation,
        "convergence_ratio": study.ratio,
        "order": study.order,
        "passed": abs(study.order - 2.0) <= tol,
    }
    table = pd.Series({k: (_fmt(s) if k == "action" else v) for k, v in payload.items()}, name="value").to_frame()
    _emit(args, payload, table.to_string())
    return EXIT_OK if payload["passed"] else EXIT_FAILED


def cmd_cpt(args) -> int:
    alpha_out = alpha_transform(args.check)(args.alpha)
    cls = classify_alpha(args.check)
    payload = {
        "check": cls.kind,
        "alpha_out": _complex_pair(alpha_out),
        "invariant": cls.test(args.alpha),
        "constraint": cls.constraint,
    }
    text = pd.Series(
        {"check": cls.kind, "alpha_out": _fmt(alpha_out), "invariant": payload["invariant"], "constraint": cls.constraint},
        name="value",
    ).to_frame().to_string()
    _emit(args, payload, text)
    return EXIT_OK


def cmd_covariance(args) -> int:
    params = _params(args)
    lmap = lorentz_spinor_map(LorentzKind(args.kind), args.rapidity, Direction3.of(args.axis))
    p = FourMomentum.on_shell(args.p, params.mass)
    tol = scaled_tolerance("symmetries.covariance", args.tol_scale)
    residuals = {b.value: covariance_check(lmap, p, params, b).residual for b in CdeBranch}
    payload = {
        "kind": lmap.kind.value,
        "intertwining": lmap.intertwining_residual(),
        "metric": lmap.metric_residual(),
        "adjoint": adjoint_intertwines(lmap),
        "residuals": residuals,
        "passed": all(r <= tol for r in residuals.values()),
    }
    flat = {k: v for k, v in payload.items() if k != "residuals"}
    flat.update({f"residual[{k}]": v for k, v in residuals.items()})
    _emit(args, payload, pd.Series(flat, name="value").to_frame().to_string())
    return EXIT_OK if payload["passed"] else EXIT_FAILED


def cmd_verify_all(args) -> int:
    report = verify_all(seed=args.seed, trials=args.trials, tol_scale=args.tol_scale)
    if args.json:
        print(report.to_json())
    else:
        frame = pd.DataFrame([c.model_dump() for c in report.checks])
        print(frame[["suite", "name", "residual", "tolerance", "passed"]].to_string(index=False))
        print(f"\n{len(report.checks) - len(report.failures)}/{len(report.checks)} checks passed (seed {report.seed})")
    return EXIT_OK if report.passed else EXIT_FAILED


# --- parser ---

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed (default: CDE_SEED or 42)")
    common.add_argument("--tol-scale", type=float, default=None, help="multiply every tolerance")

    physics = argparse.ArgumentParser(add_help=False)
    physics.add_argument("--m", type=float, default=1.0, help="mass (inverse length)")
    physics.add_argument("--alpha", type=parse_complex, default=0j, help="chiral angle, re or re,im")

    parser = argparse.ArgumentParser(prog="cde", description="Chiral Dirac equation spinor-algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gamma", parents=[common], help="print the gamma matrices")
    p.add_argument("--rep", choices=["chiral"], default="chiral")
    p.set_defaults(handler=cmd_gamma)

    p = sub.add_parser("projector", parents=[common], help="2x2 projector and eigenvector about an axis")
    p.add_argument("--axis", type=float_list(6), required=True, help="re1,im1,re2,im2,re3,im3")
    p.add_argument("--sign", choices=["+", "-"], default="+")
    p.set_defaults(handler=cmd_projector)

    p = sub.add_parser("solve", parents=[common, physics], help="plane-wave solutions of one branch")
    p.add_argument("--E", type=float, required=True)
    p.add_argument("--p", type=float_list(3), required=True, help="p1,p2,p3")
    p.add_argument("--branch", choices=[b.value for b in CdeBranch], default=CdeBranch.MIXED.value)
    p.add_argument(
        "--shell-tol",
        type=float,
        default=INPUT_SHELL_TOL,
        help="accepted |E^2 - |p|^2 - m^2| relative to max(1, E^2) (default: CDE_INPUT_SHELL_TOL or 1e-6)",
    )
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("dispersion", parents=[common, physics], help="mass-shell table as CSV")
    p.add_argument("--pmax", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--out", default=None, help="write the CSV here instead of stdout")
    p.set_defaults(handler=cmd_dispersion)

    p = sub.add_parser("lagrangian-check", parents=[common, physics], help="action and Euler-Lagrange residual")
    p.add_argument("--grid", type=int_list, default=[7, 7, 7, 7], help="n,n,n,n")
    p.add_argument("--h", type=float, default=0.1)
    p.add_argument("--p", type=float_list(3), default=[0.6, -0.5, 0.4], help="p1,p2,p3")
    p.set_defaults(handler=cmd_lagrangian_check)

    p = sub.add_parser("cpt", parents=[common], help="alpha under C, P, T and their compositions")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--check", default="CPT", help="C, P, T or a composition such as CP")
    p.set_defaults(handler=cmd_cpt)

    p = sub.add_parser("covariance", parents=[common, physics], help="Lorentz covariance of the solutions")
    p.add_argument("--kind", choices=[k.value for k in LorentzKind], default=LorentzKind.BOOST.value)
    p.add_argument("--rapidity", type=float, required=True, help="rapidity, or angle for rotations")
    p.add_argument("--axis", type=float_list(3), default=[0.0, 0.0, 1.0])
    p.add_argument("--p", type=float_list(3), default=[0.0, 0.0, 0.0], help="p1,p2,p3 (E is put on shell)")
    p.set_defaults(handler=cmd_covariance)

    p = sub.add_parser("verify-all", parents=[common], help="run every identity suite")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.set_defaults(handler=cmd_verify_all)

    return parser


def parse_and_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags and 0 on --help
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"cde {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL, logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    sys.exit(parse_and_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
