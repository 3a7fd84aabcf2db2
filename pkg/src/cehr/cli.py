"""Command-line interface.

Subcommands: evaluate (one scenario), sweep (scenario grid to CSV),
size (event/sample-size arithmetic), serve (HTTP service).

Exit codes: 0 success, 1 invalid input or usage, 2 infeasible calibration,
3 numeric failure. Scenario and grid files share the JSON schemas of the
HTTP service, so files POSTed to /v1/evaluate work unchanged here.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from typing import Optional

from .errors import DomainError, InfeasibleCalibrationError, NumericFailure

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INFEASIBLE = 2
EXIT_NUMERIC = 3

SUMMARY_FACTORS = {
    "hr-diff": ("hr_diff",),
    "shapes": ("shape_pattern",),
    "rho": ("rho",),
    "all": ("hr_diff", "shape_pattern", "rho", "global"),
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; keep 2 reserved for
    # infeasible calibrations and report usage problems as invalid input.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cehr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("evaluate", help="evaluate one scenario file")
    p_eval.add_argument("--scenario", required=True, help="scenario JSON file")
    p_eval.add_argument("--curve", help="write the HR*(t) curve to this CSV file")
    p_eval.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", dest="fmt"
    )

    p_sweep = sub.add_parser("sweep", help="run a scenario grid")
    p_sweep.add_argument("--grid", help="grid JSON file (defaults to the full grid)")
    p_sweep.add_argument("--out", required=True, help="rows CSV output path")
    p_sweep.add_argument(
        "--summary-by", choices=sorted(SUMMARY_FACTORS), default="all", dest="summary_by"
    )
    p_sweep.add_argument("--workers", type=int, default=None)

    p_size = sub.add_parser("size", help="events and sample size for one effect")
    p_size.add_argument("--hr", type=float, required=True)
    p_size.add_argument("--alpha", type=float, default=0.05)
    p_size.add_argument("--power", type=float, default=0.8)
    p_size.add_argument("--p0", type=float, default=None)
    p_size.add_argument("--p1", type=float, default=None)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--host", default="127.0.0.1")
    return parser


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path} is not valid JSON: {exc}") from exc


def _cmd_evaluate(args) -> int:
    from pydantic import ValidationError

    from .service import EvaluateRequest, _evaluate

    try:
        request = EvaluateRequest.model_validate(_read_json(args.scenario))
    except ValidationError as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return EXIT_INVALID
    response = _evaluate(request)
    summary = response.summary

    if args.curve:
        lines = ["t,hr_star,s_star_control,s_star_treatment"]
        curve = response.curve
        for i in range(len(curve.times)):
            lines.append(
                f"{curve.times[i]:.10g},{curve.hr_star[i]:.10g},"
                f"{curve.s_star_control[i]:.10g},{curve.s_star_treatment[i]:.10g}"
            )
        with open(args.curve, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")

    if args.fmt == "json":
        print(response.model_dump_json())
    elif args.fmt == "csv":
        names = list(summary.model_dump())
        print(",".join(names))
        print(",".join(str(v) for v in summary.model_dump().values()))
    else:
        flag = "yes" if summary.nph_flag else "no"
        r_text = "n/a" if summary.r is None else f"{summary.r:.2f}"
        print(
            f"mHR*={summary.m_hr:.3f} MHR*={summary.M_hr:.3f} "
            f"aHR*={summary.a_hr:.3f} ({summary.weighting})"
        )
        print(
            f"D={summary.d:.3f} R={r_text} "
            f"(threshold {response.threshold:g}: non-proportionality {flag})"
        )
        print(
            f"p*_control={summary.p_star_control:.4f} "
            f"p*_treatment={summary.p_star_treatment:.4f}"
        )
        print(
            f"events: average={summary.events_a} minimum-detectable={summary.events_M}"
        )
        print(f"sample size: n_a={summary.n_a} n_M={summary.n_M}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    from pydantic import ValidationError

    from .service import SweepRequest
    from .sweep import run_sweep, summarize_by_factor, write_csv

    payload = _read_json(args.grid) if args.grid else {}
    try:
        grid = SweepRequest.model_validate(payload).to_grid()
    except ValidationError as exc:
        print(f"invalid grid: {exc}", file=sys.stderr)
        return EXIT_INVALID

    rows = run_sweep(grid, workers=args.workers)
    write_csv(rows, args.out)
    infeasible = sum(1 for row in rows if row.status == "infeasible")
    print(f"wrote {len(rows)} rows to {args.out} ({infeasible} infeasible)")
    for factor in SUMMARY_FACTORS[args.summary_by]:
        for weighting in ("density", "uniform"):
            print(f"-- R by {factor} ({weighting} weighting)")
            for lv in summarize_by_factor(rows, factor, weighting):
                print(
                    f"   {lv.level:12s} n={lv.count:5d} min={lv.r_min:.2f} "
                    f"median={lv.r_median:.2f} max={lv.r_max:.2f}"
                )
    return EXIT_OK


def _cmd_size(args) -> int:
    from .measures import events_required, sample_size

    events = events_required(args.hr, args.alpha, args.power)
    print(f"events={events}")
    if (args.p0 is None) != (args.p1 is None):
        raise DomainError("provide both --p0 and --p1 or neither")
    if args.p0 is not None:
        n = sample_size(args.hr, args.alpha, args.power, args.p0, args.p1)
        print(f"sample_size={n}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .service import DEFAULT_PORT, serve
    import os

    port = args.port if args.port is not None else int(
        os.environ.get("CEHR_PORT", str(DEFAULT_PORT))
    )
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, port))
    except OSError as exc:
        print(f"cannot bind {args.host}:{port}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    finally:
        probe.close()
    serve(port=port, host=args.host)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "evaluate": _cmd_evaluate,
        "sweep": _cmd_sweep,
        "size": _cmd_size,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except InfeasibleCalibrationError as exc:
        print(f"infeasible calibration: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
