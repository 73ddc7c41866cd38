"""Rewrite the golden CSVs under tests/golden from the current code."""
import argparse
from pathlib import Path

from entsplit.cli import main

ROOT = Path(__file__).resolve().parents[1]


def run(argv):
    code = main(argv)
    if code != 0:
        raise SystemExit(code)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dest", type=Path, default=ROOT / "tests" / "golden")
    args = ap.parse_args()
    args.dest.mkdir(parents=True, exist_ok=True)
    run(["figure1", "--points", "101", "--branches", "2,3,4",
         "--out", str(args.dest / "figure1_n234_p101.csv")])
    run(["werner-scan", "--points", "201", "--out", str(args.dest / "werner_scan_p201.csv")])
    print(f"wrote golden files to {args.dest}")
