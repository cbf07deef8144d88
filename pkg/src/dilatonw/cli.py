"""Command-line front end: ``dilatonw sweep|threshold|validate|state``."""
from __future__ import annotations

import argparse
import json
import sys

from . import analytic, dilaton, pipeline
from .measures import OptimizerConfig
from .subsystems import canonical
from .sweep import AlphaGrid, SweepSpec, csv_text, emit_csv, find_threshold, format_number, run_sweep
from .validation import validate

EXIT_OK, EXIT_VALIDATION, EXIT_ARGS, EXIT_IO = 0, 1, 2, 3


def _common(p: argparse.ArgumentParser, alpha_help: str, alpha_default: str):
    p.add_argument("--subsystem", default="a-b1-c1",
                   help="subsystem, e.g. a-b1-c1, a-b1-b2, b1-c1, b2-c2 (default: a-b1-c1)")
    p.add_argument("--alpha", default=alpha_default, help=alpha_help)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--p", type=float, default=0.5, help="GAD mixing weight p")
    p.add_argument("--r", type=float, default=0.5, help="GAD damping strength r")
    p.add_argument("--out", default=None, help="output file (default: stdout)")


def _optimizer(p: argparse.ArgumentParser):
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dilatonw", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep", help="evaluate a measure over a grid of dilaton parameters")
    sp.add_argument("--measure", choices=("gtn", "gte", "chsh", "concurrence"), default="gtn")
    _common(sp, "alpha grid from:to:step (default 0:1:0.01)", "0:1:0.01")
    _optimizer(sp)

    tp = sub.add_parser("threshold", help="find where the Svetlichny maximum crosses a target")
    _common(tp, "unused; the scan always covers [0, mass]", "0:1:0.01")
    _optimizer(tp)
    tp.add_argument("--target", type=float, default=4.0)

    sub.add_parser("validate", help="run the oracle suite; exit status 1 on any failure")

    st = sub.add_parser("state", help="dump a reduced density matrix as CSV")
    _common(st, "single dilaton parameter value (default 0)", "0")
    st.add_argument("--source", choices=("pipeline", "analytic"), default="pipeline")
    return parser


def _spec(args, measure: str) -> SweepSpec:
    return SweepSpec(
        measure=measure,
        subsystem=args.subsystem,
        alpha_grid=AlphaGrid.parse(args.alpha),
        omega=args.omega,
        mass=args.mass,
        p=args.p,
        r=args.r,
        optimizer=OptimizerConfig(restarts=args.restarts, seed=args.seed),
        output_path=args.out,
    )


def _write_text(text: str, path):
    if path is None:
        sys.stdout.write(text + "\n")
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write to {path}: {exc.strerror or exc}") from exc


def _state_csv(args) -> str:
    tag = canonical(args.subsystem)
    alpha = float(args.alpha)
    b = dilaton.beta(dilaton.DilatonParams(omega=args.omega, mass=args.mass, alpha=alpha))
    if args.source == "analytic":
        rho = analytic.rho_subsystem(tag, b, args.p, args.r)
    else:
        rho = pipeline.reduced_state(tag, b, args.p, args.r)
    lines = ["row,col,re,im"]
    for i in range(rho.dim):
        for j in range(rho.dim):
            v = rho.matrix[i, j]
            lines.append(f"{i},{j},{format_number(v.real)},{format_number(v.imag)}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ARGS if exc.code else EXIT_OK
    try:
        if args.command == "validate":
            report = validate()
            print(json.dumps(report, indent=2))
            return EXIT_OK if report["passed"] else EXIT_VALIDATION
        if args.command == "sweep":
            spec = _spec(args, args.measure)
            rows = run_sweep(spec)
            if args.out is None:
                sys.stdout.write(csv_text(rows) + "\n")
            else:
                emit_csv(rows, args.out)
            return EXIT_OK
        if args.command == "threshold":
            spec = _spec(args, "gtn")
            res = find_threshold(spec, target=args.target)
            payload = {"found": res.found, "alpha_critical": res.alpha_critical,
                       "bracket_width": res.bracket_width}
            _write_text(json.dumps(payload), args.out)
            return EXIT_OK
        if args.command == "state":
            _write_text(_state_csv(args), args.out)
            return EXIT_OK
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
