"""Command line interface: run verification suites and export geometry data.

    scgamma verify <suite> [--n INT --k INT --seed INT --tol FLOAT
                            --samples INT --json PATH]
    scgamma export <target> [--resolution INT --out PATH]

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error. Relative
output paths resolve under ``SCGAMMA_OUTPUT_DIR`` when that is set.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .suites import SUITE_NAMES, Report, SuiteConfig, SuiteUsageError, run_suite

EXPORT_TARGETS = ("gamma01", "glued-slice")


def _resolve(path: str) -> Path:
    p = Path(path)
    base = os.environ.get("SCGAMMA_OUTPUT_DIR")
    if base and not p.is_absolute():
        return Path(base) / p
    return p


def _print_report(report: Report, stream=None):
    stream = stream or sys.stdout
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"[{status}] {report.suite}/{c.name}: max_error={c.max_error:.3e} "
              f"tol={c.tolerance:.1e}", file=stream)
    overall = "PASS" if report.passed else "FAIL"
    print(f"{overall} suite={report.suite} checks={len(report.checks)} "
          f"wall_time={report.wall_time_s:.2f}s", file=stream)


def export_geometry(target: str, resolution: int, path: Path) -> Path:
    """Write a CSV mesh for the requested figure target."""
    if resolution <= 0:
        raise SuiteUsageError("resolution must be a positive integer")
    if target == "gamma01":
        rows = ["t,y"]
        for t in np.linspace(-2.0, 0.0, resolution):
            rows.append(f"{t},0.0")
        for t in np.linspace(2.0 / resolution, 2.0, resolution):
            for y in np.linspace(-2.0, 2.0, resolution):
                rows.append(f"{t},{y}")
    elif target == "glued-slice":
        rows = ["component,re_z,im_z,re_w"]
        radii = np.linspace(0.0, 0.95, max(2, resolution // 4))
        angles = np.linspace(0.0, 2.0 * np.pi, resolution, endpoint=False)
        for h in np.linspace(-1.0, 1.0, max(2, resolution // 4)):
            for r in radii:
                for a in angles:
                    rows.append(f"cylinder,{r * np.cos(a)},{r * np.sin(a)},{h}")
        for re in np.linspace(-2.0, 2.0, resolution):
            for im in np.linspace(-2.0, 2.0, resolution):
                rows.append(f"plane,{re},{im},0.0")
    else:
        raise SuiteUsageError(
            f"unknown export target {target!r}; choose from {', '.join(EXPORT_TARGETS)}")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(rows) + "\n")
    except OSError as exc:
        raise SuiteUsageError(f"cannot write {path}: {exc}") from exc
    return path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scgamma",
                                     description="numerical verification harness")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITE_NAMES)
    v.add_argument("--n", type=int, default=1)
    v.add_argument("--k", type=int, default=2)
    v.add_argument("--seed", type=int, default=7)
    v.add_argument("--tol", type=float, default=None)
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--json", type=str, default=None,
                   help="write the JSON report to this path")

    e = sub.add_parser("export", help="export geometry data as CSV")
    e.add_argument("target", choices=EXPORT_TARGETS)
    e.add_argument("--resolution", type=int, default=100)
    e.add_argument("--out", type=str, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            config = SuiteConfig(args.suite, n=args.n, k=args.k, seed=args.seed,
                                 samples=args.samples, tol=args.tol)
            report = run_suite(config)
            _print_report(report)
            if args.json:
                path = _resolve(args.json)
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(report.to_json() + "\n")
                print(f"report written to {path}")
            return 0 if report.passed else 1
        path = _resolve(args.out or f"{args.target}.csv")
        out = export_geometry(args.target, args.resolution, path)
        print(f"geometry written to {out}")
        return 0
    except SuiteUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
