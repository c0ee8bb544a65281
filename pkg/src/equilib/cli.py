"""Command-line front end: Gram reports, time sweeps, validation runs.

Exit codes: 0 success, 1 validation failure, 2 argument error, 3 input-file
error.  Output is deterministic for identical (config, seed); validation
runtimes are included only with --timings.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import rational
from .equilibrium import (
    SpectrumFormatError,
    exact_haar_distance,
    gaussian_average,
    leading_order_distance,
    load_spectrum,
)
from .gram import (
    SingularGramError,
    build_gram,
    determinant_formula,
    pseudoinverse,
    spectral_data,
    spectral_inverse,
    trace_formula,
)
from .montecarlo import mc_distance_sweep
from .permgroup import multiplicities
from .validate import CHECKS, report_dict, run_checks

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_INPUT = 3


def _frac_str(x) -> str:
    f = Fraction(x)
    return str(f)


def _matrix_strings(m) -> list[list[str]]:
    return [[_frac_str(v) for v in row] for row in m]


def _write_output(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def cmd_gram(args) -> int:
    n, d = args.n, args.d
    if d < 1:
        print(f"error: --d must be >= 1, got {d}", file=sys.stderr)
        return EXIT_USAGE
    gram = build_gram(n, d)
    data = spectral_data(n, d)
    report = {
        "n": n,
        "d": d,
        "group_order": gram.size,
        "multiplicities": list(multiplicities(n, d)),
        "eigenvalues": [_frac_str(v) for v in data.eigenvalues],
        "eigenvalue_multiplicities": list(data.multiplicities),
        "trace": trace_formula(n, d),
        "det": _frac_str(determinant_formula(n, d)),
        "singular": any(k == 0 for k in data.irrep_multiplicities),
        "entries": [[int(v) for v in row] for row in gram.entries],
    }
    try:
        report["inverse"] = _matrix_strings(spectral_inverse(gram))
    except SingularGramError:
        report["inverse"] = None
    report["pseudoinverse"] = _matrix_strings(pseudoinverse(gram))
    _write_output(json.dumps(report, indent=2, sort_keys=True), args.out)
    return EXIT_OK


SWEEP_CSV_HEADER = ["t", "exact", "leading_order", "mc_mean", "mc_stderr"]
GAUSSIAN_CSV_HEADER = ["t", "gaussian_average"]


def _float_repr(x) -> str:
    return repr(float(x))


def cmd_sweep(args) -> int:
    try:
        spectrum = load_spectrum(args.spectrum)
    except SpectrumFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.t_min > args.t_max:
        print(f"error: --t-min {args.t_min} exceeds --t-max {args.t_max}", file=sys.stderr)
        return EXIT_USAGE
    if args.steps < 1:
        print(f"error: --steps must be >= 1, got {args.steps}", file=sys.stderr)
        return EXIT_USAGE
    if args.samples < 0:
        print(f"error: --samples must be >= 0, got {args.samples}", file=sys.stderr)
        return EXIT_USAGE
    if args.steps == 1:
        ts = np.array([args.t_min])
    else:
        ts = np.linspace(args.t_min, args.t_max, args.steps)

    if args.gaussian:
        sigma = args.sigma if args.sigma is not None else math.log(spectrum.dim)
        values = gaussian_average(spectrum.degeneracies(), spectrum.d_S, sigma, ts)
        rows = [{"t": float(t), "gaussian_average": float(v)} for t, v in zip(ts, values)]
        header = GAUSSIAN_CSV_HEADER
    else:
        mc_mean = mc_err = None
        if args.samples > 0:
            mc_mean, mc_err = mc_distance_sweep(spectrum, ts, args.samples, args.seed)
        rows = []
        for i, t in enumerate(ts):
            rows.append({
                "t": float(t),
                "exact": exact_haar_distance(spectrum, float(t)),
                "leading_order": float(leading_order_distance(spectrum, float(t))),
                "mc_mean": float(mc_mean[i]) if mc_mean is not None else None,
                "mc_stderr": float(mc_err[i]) if mc_err is not None else None,
            })
        header = SWEEP_CSV_HEADER

    if args.format == "json":
        doc = {
            "config": {
                "spectrum": str(args.spectrum),
                "t_min": args.t_min, "t_max": args.t_max, "steps": args.steps,
                "samples": args.samples, "seed": args.seed,
                "gaussian": bool(args.gaussian),
                "sigma": args.sigma,
            },
            "rows": rows,
        }
        _write_output(json.dumps(doc, indent=2, sort_keys=True), args.out)
    else:
        import io

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(["" if row[h] is None else _float_repr(row[h]) for h in header])
        _write_output(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    names = args.check if args.check else None
    try:
        results = run_checks(names)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name} (margin {r.margin:+.3f})", file=sys.stderr)
    report = report_dict(results, include_runtime=args.timings)
    _write_output(json.dumps(report, indent=2, sort_keys=True), args.out)
    return EXIT_OK if report["passed"] else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equilib",
        description="Exact Haar-averaged subsystem equilibration distances "
                    "with Monte-Carlo validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gram = sub.add_parser("gram", help="Gram-matrix report (eigenvalues, det, inverse) as JSON")
    p_gram.add_argument("--n", type=int, choices=(3, 4), default=4,
                        help="permutation-group degree (3 or 4)")
    p_gram.add_argument("--d", type=int, required=True, help="local dimension")
    p_gram.add_argument("--out", default=None, help="output path (default stdout)")
    p_gram.set_defaults(func=cmd_gram)

    p_sweep = sub.add_parser("sweep", help="time sweep of distances as CSV or JSON")
    p_sweep.add_argument("--spectrum", required=True, help="spectrum JSON file")
    p_sweep.add_argument("--t-min", type=float, default=0.0)
    p_sweep.add_argument("--t-max", type=float, default=3.0)
    p_sweep.add_argument("--steps", type=int, default=31)
    p_sweep.add_argument("--samples", type=int, default=0,
                         help="Monte-Carlo samples per point (0 = analytic only)")
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--gaussian", action="store_true",
                         help="sweep the Gaussian-ensemble average instead")
    p_sweep.add_argument("--sigma", type=float, default=None,
                         help="Gaussian energy width (default log d)")
    p_sweep.add_argument("--out", default=None, help="output path (default stdout)")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.set_defaults(func=cmd_sweep)

    p_val = sub.add_parser("validate", help="run validation checks, emit JSON report")
    p_val.add_argument("--check", action="append", choices=sorted(CHECKS),
                       help="run only the named check (repeatable)")
    p_val.add_argument("--timings", action="store_true",
                       help="include runtimes in the report (breaks byte-determinism)")
    p_val.add_argument("--out", default=None, help="output path (default stdout)")
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
