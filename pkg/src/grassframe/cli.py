"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 validation failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import canonical, constructions, erasure, gabor, optimizer
from .errors import FrameValidationError, NumericalError
from .frame import etf_feasible, metrics, read_frame, welch_bound, write_frame

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_VALIDATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _emit(stream, **pairs) -> None:
    for key, value in pairs.items():
        if isinstance(value, bool):
            value = str(value).lower()
        elif isinstance(value, float):
            value = repr(value)
        print(f"{key}={value}", file=stream)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"construct --kind {args.kind} requires " + ", ".join("--" + n for n in missing))


def _construct(args, out):
    kind = args.kind
    if kind == "simplex":
        _need(args, "m")
        frame = constructions.simplex_frame(args.m)
    elif kind in ("paley", "skew"):
        _need(args, "n")
        conf = constructions.paley_conference(args.n) if kind == "paley" else constructions.skew_conference(args.n)
        frame = constructions.gram_to_frame(constructions.conference_to_gram(conf), args.n // 2)
    elif kind == "alltop":
        _need(args, "m")
        frame = constructions.alltop_gabor(args.m, append_onb=args.append_onb)
    elif kind == "harmonic":
        _need(args, "m", "n")
        rows = args.rows if args.rows is not None else list(range(args.m))
        frame = constructions.harmonic_frame(args.m, args.n, rows)
    elif kind == "diffset":
        _need(args, "dset")
        frame = constructions.difference_set_frame(constructions.DifferenceSetSpec.parse(args.dset))
    else:
        _need(args, "m", "n")
        frame = constructions.random_uniform_tight(args.m, args.n, args.seed, field=args.field)
    write_frame(frame, args.out)
    _emit(out, kind=kind, m=frame.m, n=frame.n, field=frame.field, out=args.out)


def _analyze(args, out):
    frame = read_frame(args.file)
    mt = metrics(frame, args.tol)
    _emit(
        out,
        m=frame.m,
        n=frame.n,
        field=frame.field,
        max_correlation=mt.max_correlation,
        welch_bound=mt.welch_bound,
        gap=mt.gap,
        tight=mt.is_tight,
        equiangular=mt.is_equiangular,
        achieves_welch=mt.achieves_welch,
        lower_bound=mt.bounds.lower,
        upper_bound=mt.bounds.upper,
        redundancy=mt.redundancy,
    )


def _welch(args, out):
    _emit(out, m=args.m, n=args.n, field=args.field, bound=welch_bound(args.m, args.n),
          feasible=etf_feasible(args.m, args.n, args.field))


def _optimize(args, out):
    cfg = optimizer.OptimizerConfig(restarts=args.restarts, seed=args.seed)
    res = optimizer.minimize_max_correlation(args.m, args.n, args.field, cfg)
    write_frame(res.frame, args.out)
    _emit(out, m=args.m, n=args.n, field=args.field, achieved=res.achieved, welch=res.welch, gap=res.gap,
          converged=res.converged, restarts_used=res.restarts_used, best_restart=res.best_restart, out=args.out)


def _erasures(args, out):
    frame = read_frame(args.file)
    text = erasure.erasure_csv([erasure.condition_sweep(frame, e) for e in args.e])
    if args.csv:
        Path(args.csv).write_text(text, encoding="ascii")
    else:
        out.write(text)


def _tighten(args, out):
    frame = read_frame(args.file)
    report = canonical.verify_tighten_bound(frame)
    write_frame(canonical.canonical_tighten(frame), args.out)
    _emit(out, lhs=report.lhs, rhs=report.rhs, penalty=report.penalty, rho=report.rho,
          lower_bound=report.lower, upper_bound=report.upper,
          uniformity_residual=report.uniformity_residual, uniform_after=report.uniform_after, out=args.out)


def _gabor(args, out):
    text = gabor.lattice_csv(gabor.compare_lattices(args.rho_list))
    if args.csv:
        Path(args.csv).write_text(text, encoding="ascii")
    else:
        out.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grassframe", description="Grassmannian frame construction and analysis")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build a frame and write it as FRM1")
    p.add_argument("--kind", required=True, choices=["simplex", "paley", "skew", "alltop", "harmonic", "diffset", "random"])
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--rows", type=_ints)
    p.add_argument("--dset", help="difference set as v:d1,d2,... e.g. 7:1,2,4")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", choices=["R", "C"], default="C", help="field for --kind random")
    p.add_argument("--append-onb", action="store_true", help="alltop: append the standard basis")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_construct)

    p = sub.add_parser("analyze", help="print frame metrics")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=_analyze)

    p = sub.add_parser("welch", help="Welch bound and ETF cardinality feasibility")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", choices=["R", "C"], default="C")
    p.set_defaults(func=_welch)

    p = sub.add_parser("optimize", help="numerically minimize the maximal correlation")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", choices=["R", "C"], required=True)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_optimize)

    p = sub.add_parser("erasures", help="condition numbers over all erasure patterns")
    p.add_argument("file")
    p.add_argument("--e", type=_ints, required=True, help="erasure count(s), comma separated")
    p.add_argument("--csv")
    p.set_defaults(func=_erasures)

    p = sub.add_parser("tighten", help="canonical tight frame and its correlation bound")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_tighten)

    p = sub.add_parser("gabor", help="hexagonal vs square Gaussian Gabor lattices")
    p.add_argument("--rho-list", type=_floats, default=[0.5, 1.0, 2.0, 4.0])
    p.add_argument("--csv")
    p.set_defaults(func=_gabor)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except FrameValidationError as exc:
        print(f"validation error: {exc}", file=err)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=err)
        return EXIT_NUMERICAL
    except canonical.BoundViolation as exc:
        print(f"numerical failure: {exc}", file=err)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(run())
