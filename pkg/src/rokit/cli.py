"""odebench: command-line driver for the benchmark experiments.

Subcommands
-----------
converge          fixed-step convergence ladder with fitted order
precision         adaptive work-precision sweep over tolerances
stability         |R(iy)| samples along the imaginary axis
check-conditions  order-condition residual table for one method
lemma1            restricted-vs-true Jacobian power gaps

Exit codes: 0 success, 1 usage error, 2 numerical failure,
3 reference disagreement.
"""

import argparse
import sys as _sys

import numpy as np

from . import bench, conditions
from .errors import (NonFiniteOutput, ReferenceDisagreement, RokitError,
                     StepSizeUnderflow, UnknownMethod, UnknownProblem)
from .problems import get_problem
from .tableaux import get_method

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_REFERENCE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(_sys.stderr)
        _sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _add_common(p):
    p.add_argument("--problem", default="lorenz96",
                   help="problem name (lorenz96, burgers, shallow-water)")
    p.add_argument("--method", default="rok4a",
                   help="method name (rok4a, rok4b, rok4p, ros4, rodas4, rk4)")
    p.add_argument("--krylov-dim", default="full",
                   help="Krylov basis size, or 'full' for the exact Jacobian")
    p.add_argument("--jvp", default="exact",
                   help="exact | fd | fd-fixed:DELTA")
    p.add_argument("--basis", default="type1", choices=["type1", "type2"])
    p.add_argument("--steps", default=None,
                   help="comma-separated fixed step counts")
    p.add_argument("--tols", default=None,
                   help="comma-separated tolerances for precision sweeps")
    p.add_argument("--atol", type=float, default=None)
    p.add_argument("--rtol", type=float, default=None)
    p.add_argument("--out", default=None, help="CSV output path")
    p.add_argument("--threads", type=int, default=1)


def _build_parser():
    parser = _Parser(prog="odebench",
                     description="Rosenbrock-Krylov benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("converge", "precision", "stability", "check-conditions",
                 "lemma1"):
        p = sub.add_parser(name)
        _add_common(p)
        if name == "check-conditions":
            p.add_argument("--family", default="k4",
                           choices=["k4", "k5", "w", "classical", "parabolic"])
        if name == "stability":
            p.add_argument("--ymax", type=float, default=100.0)
            p.add_argument("--samples", type=int, default=1001)
    return parser


def _run_config(args) -> bench.RunConfig:
    krylov = args.krylov_dim
    if krylov != "full":
        krylov = int(krylov)
    kwargs = dict(problem=args.problem, method=args.method, krylov_dim=krylov,
                  jvp=args.jvp, basis=args.basis, atol=args.atol,
                  rtol=args.rtol, out=args.out, threads=args.threads)
    if args.steps:
        kwargs["steps"] = tuple(int(s) for s in args.steps.split(","))
    if args.tols:
        kwargs["tols"] = tuple(float(s) for s in args.tols.split(","))
    return bench.RunConfig(**kwargs)


def _cmd_converge(args) -> int:
    cfg = _run_config(args)
    report = bench.run_convergence(cfg)
    print("h,error,f_evals,jvp_evals,wall_seconds")
    for r in report.rows:
        print(f"{r.h:.16e},{r.error:.16e},{r.f_evals},{r.jvp_evals},"
              f"{r.wall_seconds:.3e}")
    print(f"fitted_order={report.fitted_order:.3f} r2={report.fit_r2:.5f}")
    return EXIT_OK


def _cmd_precision(args) -> int:
    cfg = _run_config(args)
    rows = bench.run_work_precision(cfg)
    print("tol,error,f_evals,jvp_evals,wall_seconds")
    for tol, err, fe, je, wall in rows:
        print(f"{tol:.16e},{err:.16e},{fe},{je},{wall:.3e}")
    return EXIT_OK


def _cmd_stability(args) -> int:
    tab = get_method(args.method)
    ys = np.linspace(-args.ymax, args.ymax, args.samples)
    rows = conditions.sample_stability_boundary(tab, ys)
    print("y,abs_R,abs_R_embedded")
    for y, r, rhat in rows:
        print(f"{y:.16e},{r:.16e},{rhat:.16e}")
    if args.out:
        bench.write_csv(args.out, f"method={args.method} ymax={args.ymax} "
                        f"samples={args.samples} lib={bench.LIB_VERSION}",
                        ["y", "abs_R", "abs_R_embedded"], rows)
    return EXIT_OK


def _cmd_check_conditions(args) -> int:
    tab = get_method(args.method)
    rows = conditions.order_condition_residuals(tab, args.family)
    tol = 1e-8 if args.method == "rok4b" else 1e-10
    print("label,family,lhs,target,residual,pass")
    for r in rows:
        ok = r.residual <= tol if r.family in ("k4", "classical",
                                               "parabolic") else True
        print(f"{r.label},{r.family},{r.lhs:.16e},{r.target:.16e},"
              f"{r.residual:.16e},{ok}")
    return EXIT_OK


def _cmd_lemma1(args) -> int:
    problem = get_problem(args.problem)
    m = 6 if args.krylov_dim == "full" else int(args.krylov_dim)
    rows = bench.run_lemma1(problem, m)
    print("k,relative_gap")
    for k, gap in rows:
        print(f"{k},{gap:.16e}")
    if args.out:
        bench.write_csv(args.out, f"problem={args.problem} m={m} "
                        f"lib={bench.LIB_VERSION}",
                        ["k", "relative_gap"], rows)
    return EXIT_OK


_COMMANDS = {
    "converge": _cmd_converge,
    "precision": _cmd_precision,
    "stability": _cmd_stability,
    "check-conditions": _cmd_check_conditions,
    "lemma1": _cmd_lemma1,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (UnknownProblem, UnknownMethod, ValueError) as exc:
        _sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ReferenceDisagreement as exc:
        _sys.stderr.write(f"reference disagreement: {exc}\n")
        return EXIT_REFERENCE
    except (NonFiniteOutput, StepSizeUnderflow) as exc:
        _sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except RokitError as exc:
        _sys.stderr.write(f"error: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
