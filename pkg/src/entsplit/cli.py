"""Command-line front end.

Exit codes: 0 success, 1 usage/input error, 2 I/O error, 3 constraint or
invariant failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import cloner as cl
from . import splitting as sp
from .measures import eof_from_concurrence
from .states import SchmidtParams, StateError

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_CONSTRAINT = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """CSV cell: 12 significant digits, booleans as true/false."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def render_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def render_json(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    def plain(x):
        if isinstance(x, (bool, np.bool_)):
            return bool(x)
        return int(x) if isinstance(x, (int, np.integer)) else float(x)

    doc = {"schema": 1, "columns": list(header), "rows": [[plain(x) for x in r] for r in rows]}
    return json.dumps(doc, indent=2) + "\n"


def emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", newline="\n") as fh:
        fh.write(text)


@dataclass
class SweepSpec:
    alpha_sq_min: float = 0.0
    alpha_sq_max: float = 1.0
    points: int = sp.DEFAULT_POINTS
    n_branches: list[int] = field(default_factory=lambda: [2, 3, 4])
    output_path: str | None = None
    format: str = "csv"

    def validate(self) -> None:
        if not 0.0 <= self.alpha_sq_min <= self.alpha_sq_max <= 1.0:
            raise UsageError(f"need 0 <= alpha-sq-min <= alpha-sq-max <= 1, "
                             f"got [{self.alpha_sq_min}, {self.alpha_sq_max}]")
        if self.points < 2:
            raise UsageError(f"--points must be >= 2, got {self.points}")
        if not self.n_branches or any(n < 2 for n in self.n_branches):
            raise UsageError(f"every branch count must be >= 2, got {self.n_branches}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")


def figure1_table(spec: SweepSpec) -> tuple[list[str], list[list[float]]]:
    """EOF of one branch against |alpha| for each branch count."""
    spec.validate()
    header = ["abs_alpha"] + [f"eof_{n}" for n in spec.n_branches]
    rows = []
    for x in sp.alpha_sq_grid(spec.points, spec.alpha_sq_min, spec.alpha_sq_max):
        p = SchmidtParams.from_alpha_sq(float(x))
        rows.append([np.sqrt(x)] + [eof_from_concurrence(sp.concurrence_closed_form(p, n))
                                    for n in spec.n_branches])
    return header, rows


def cmd_figure1(spec: SweepSpec) -> int:
    header, rows = figure1_table(spec)
    render = render_csv if spec.format == "csv" else render_json
    emit(render(header, rows), spec.output_path)
    return EXIT_OK


def cmd_figure2(alpha_sq: float) -> int:
    if not 0.0 < alpha_sq < 1.0:
        raise UsageError(f"figure2 needs 0 < alpha-sq < 1, got {alpha_sq}")
    pm = sp.pairwise_entanglement(SchmidtParams.from_alpha_sq(alpha_sq))
    print(f"pairwise PPT status after splitting, |alpha|^2 = {alpha_sq:g}")
    print(f"{'pair':<10} {'ppt_min':>16} {'entangled':>10}")
    for (x, y), status in pm.pairs.items():
        print(f"{x + '-' + y:<10} {status.min_eigenvalue:>16.12g} {str(status.entangled).lower():>10}")
    return EXIT_OK


def cmd_report(alpha_sq: float, n: int) -> int:
    if not 0.0 <= alpha_sq <= 1.0:
        raise UsageError(f"alpha-sq must lie in [0, 1], got {alpha_sq}")
    if n < 2:
        raise UsageError(f"branch count must be >= 2, got {n}")
    p = SchmidtParams.from_alpha_sq(alpha_sq)
    report = sp.split_schmidt(p) if n == 2 else sp.split_n_branch(p, n)
    sys.stdout.write(json.dumps(report.to_json(), indent=2) + "\n")
    return EXIT_OK


def cmd_check(transform_file: str) -> int:
    t = cl.load_transform(transform_file)
    report = cl.check_constraints(t)
    print(f"transform: {t.name} (ancilla dimension {t.d_anc})")
    print(f"{'constraint':<11} {'residual':>12} {'ok':>5}")
    for k in cl.CONSTRAINTS:
        note = "  (differs from the cloning constraint)" if k in report.differs_from_cloning else ""
        print(f"{k:<11} {report.residuals[k]:>12.3e} {str(report.passed[k]).lower():>5}{note}")
    if not report.all_passed:
        print(f"FAILED: {', '.join(report.failures())}")
        return EXIT_CONSTRAINT
    r = sp.split_singlet(t)
    print(f"f_w {fmt(r.f_w)}")
    print(f"f_w_formula {fmt(cl.werner_fraction_formula(t))}")
    return EXIT_OK


def cmd_werner_scan(points: int, out: str | None = None, fmt_name: str = "csv") -> int:
    if points < 2:
        raise UsageError(f"--points must be >= 2, got {points}")
    scan = sp.werner_scan(points)
    header = ["fw_in", "output_ppt_min", "output_separable", "input_entangled"]
    rows = [[s.fw_in, s.ppt.min_eigenvalue, s.separable, s.input_entangled] for s in scan]
    render = render_csv if fmt_name == "csv" else render_json
    emit(render(header, rows), out)
    hit = sp.detected_interval(scan)
    summary = ("no grid point has an entangled input and a separable output" if hit is None else
               f"separable output with entangled input for fw_in in [{hit[0]:.6g}, {hit[1]:.6g}]")
    print(summary, file=sys.stdout if out else sys.stderr)
    return EXIT_OK


def cmd_probe(trials: int, seed: int, fmt_name: str = "csv") -> int:
    if trials < 1:
        raise UsageError(f"--trials must be >= 1, got {trials}")
    samples = sp.probe_samples(trials, seed)
    fws = np.array([s.f_w for s in samples])
    doc = {
        "schema": 1,
        "trials": trials,
        "seed": seed,
        "max_f_w": float(fws.max()),
        "min_f_w": float(fws.min()),
        "min_f_c": float((2 * fws.min() + 1) / 3),
        "exceeds_bound": bool(fws.max() > 0.75 + 1e-9),
    }
    if fmt_name == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(render_csv(list(doc), [list(doc.values())]))
    return EXIT_CONSTRAINT if doc["exceeds_bound"] else EXIT_OK


def _branches(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--points", type=int)
    common.add_argument("--alpha-sq", type=float)
    common.add_argument("--branches", type=_branches)
    common.add_argument("--out")
    common.add_argument("--format", choices=["csv", "json"], default="csv")

    parser = _Parser(prog="entsplit", description="Entanglement splitting by local cloning.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f1 = sub.add_parser("figure1", parents=[common], help="EOF per branch against |alpha|")
    f1.add_argument("--alpha-sq-min", type=float, default=0.0)
    f1.add_argument("--alpha-sq-max", type=float, default=1.0)
    sub.add_parser("figure2", parents=[common], help="pairwise entanglement after splitting")
    sub.add_parser("report", parents=[common], help="full diagnostics as JSON")
    chk = sub.add_parser("check", parents=[common], help="check a transform file")
    chk.add_argument("transform_file", nargs="?")
    chk.add_argument("--bundled", choices=["optimal", "bad"])
    sub.add_parser("werner-scan", parents=[common], help="split Werner inputs")
    pr = sub.add_parser("probe", parents=[common], help="random search for a better splitter")
    pr.add_argument("--trials", type=int, default=1000)
    pr.add_argument("--seed", type=int, default=0)
    return parser


def run(args: argparse.Namespace) -> int:
    if args.command == "figure1":
        return cmd_figure1(SweepSpec(
            args.alpha_sq_min, args.alpha_sq_max,
            args.points if args.points is not None else sp.DEFAULT_POINTS,
            args.branches or [2, 3, 4], args.out, args.format,
        ))
    if args.command == "figure2":
        return cmd_figure2(0.5 if args.alpha_sq is None else args.alpha_sq)
    if args.command == "report":
        branches = args.branches or [2]
        if len(branches) != 1:
            raise UsageError("report takes a single branch count")
        return cmd_report(0.5 if args.alpha_sq is None else args.alpha_sq, branches[0])
    if args.command == "check":
        if (args.transform_file is None) == (args.bundled is None):
            raise UsageError("give exactly one of a transform file or --bundled")
        return cmd_check(args.transform_file or str(cl.bundled(args.bundled)))
    if args.command == "werner-scan":
        return cmd_werner_scan(args.points if args.points is not None else 201, args.out, args.format)
    if args.command == "probe":
        return cmd_probe(args.trials, args.seed, args.format)
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except (cl.ConstraintError, sp.InvariantError) as exc:
        print(f"entsplit: constraint failure: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except OSError as exc:
        print(f"entsplit: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, cl.TransformFormatError, StateError, ValueError) as exc:
        print(f"entsplit: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
