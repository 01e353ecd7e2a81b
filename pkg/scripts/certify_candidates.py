#!/usr/bin/env python3
"""Run the certification pipeline on every bundled candidate and summarize."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

import json

from lamprigid import certify, jsonio


def main() -> None:
    root = pathlib.Path(__file__).resolve().parents[1] / "candidates"
    for path in sorted(root.glob("*.json")):
        candidate = jsonio.parse_candidate(json.loads(path.read_text()))
        report = certify(candidate, qu_bound=8)
        status = "certified" if report.certified else f"NOT certified ({report.failed_stage})"
        print(f"{path.name:28s} p={candidate.field.p} n={candidate.n}  {status}")
        if not report.certified and report.qu_comparison.witness:
            side, fp = report.qu_comparison.witness
            side_name = "candidate" if side == "left" else "lamplighter"
            print(f"{'':28s} quotient witness: {fp.describe()} only on the {side_name} side")


if __name__ == "__main__":
    main()
