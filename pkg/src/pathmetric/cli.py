"""Command-line interface.

Results go to stdout as JSON (or CSV with ``--csv`` where tabular);
diagnostics go to stderr.  Exit codes: 0 success (an infeasible or
inconsistent answer is still a success), 2 invalid input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Optional

from .core import PathSystem, validate_system
from .delta import (MetricCertificate, delta_bisect, exact_threshold, invariant_template, is_metric,
                    verify_certificate)
from .errors import (InputError, NoThresholdInInterval, PathMetricError, ResourceCap,
                     SamplingExhausted)
from .groups import (INVARIANT_FORMAT, WordTable, build_from_words, cayley_construction,
                     default_m, paley_system, petersen_system, sample_X)
from .linarith.fm import fm_eliminate, projection_feasible
from .linarith.lpformat import format_lp, load_lp
from .linarith.parametric import Interval, parametric_eliminate
from .linarith.simplex import feasible

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 2, 3


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e


def load_system(path: str):
    """A :class:`PathSystem` or :class:`WordTable`, depending on the file's format tag."""
    doc = _read_json(path)
    if "system" in doc and "format" not in doc:
        doc = doc["system"]
    fmt = doc.get("format")
    if fmt == INVARIANT_FORMAT:
        return WordTable.from_json(doc)
    return PathSystem.from_json(doc)


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"not a rational number: {text!r}") from e


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as e:
        raise InputError(f"not a list of integers: {text!r}") from e


def _emit(obj, out) -> None:
    json.dump(obj, out, indent=2, sort_keys=False)
    out.write("\n")


# -- subcommands ------------------------------------------------------------

def cmd_check(args, out):
    target = load_system(args.file)
    ps = build_from_words(target) if isinstance(target, WordTable) else target
    rep = validate_system(ps)
    doc = rep.to_json()
    if not doc["violations"]:
        del doc["violations"]
    _emit(doc, out)


def cmd_delta(args, out):
    target = load_system(args.file)
    res = delta_bisect(target, _frac(args.tol), invariant=args.invariant,
                       float_prepass=args.float_prepass)
    doc = res.to_json()
    if args.cert_out:
        if res.certificate is None:
            raise InputError("no certificate for this system")
        with open(args.cert_out, "w") as fh:
            fh.write(res.certificate.dumps() + "\n")
    if not args.with_evidence:
        doc.pop("lo_evidence", None)
    _emit(doc, out)


def cmd_is_metric(args, out):
    target = load_system(args.file)
    _emit(is_metric(target).to_json(), out)


def cmd_verify(args, out):
    target = load_system(args.system)
    cert = MetricCertificate.from_json(_read_json(args.cert))
    _emit(verify_certificate(target, cert).to_json(), out)


def cmd_gen(args, out):
    if args.what == "petersen":
        doc = petersen_system().to_json()
        _write_or_emit(doc, args.out, out)
    elif args.what == "paley":
        _require(args, "p")
        _write_or_emit(paley_system(args.p).to_json(), args.out, out)
    elif args.what == "cayley":
        _require(args, "n", "x", "m")
        X = _int_list(args.x)
        X = sorted(set(X) | {-x for x in X})
        params, wt = cayley_construction(args.n, X, args.m)
        doc = {"params": params.to_json()}
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(wt.dumps() + "\n")
        else:
            doc["system"] = wt.to_json()
        _emit(doc, out)
    elif args.what == "sample":
        _require(args, "n", "k", "seed")
        m = args.m if args.m is not None else default_m(args.n)
        res = sample_X(args.n, args.k, m, args.seed, args.attempts)
        _emit({"n": args.n, "k": args.k, "m": m, "seed": args.seed, "X": list(res.X),
               "attempts": res.attempts, "diameter": res.diameter}, out)


def _require(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"gen {args.what} needs {' '.join(missing)}")


def _write_or_emit(doc, path, out):
    if path:
        with open(path, "w") as fh:
            json.dump(doc, fh)
            fh.write("\n")
    else:
        _emit(doc, out)


def cmd_expand(args, out):
    doc = _read_json(args.file)
    if "system" in doc and "format" not in doc:
        doc = doc["system"]
    _emit(build_from_words(WordTable.from_json(doc)).to_json(), out)


def cmd_fm(args, out):
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {args.file}: {e}") from e
    order = [s for s in args.order.split(",") if s] if args.order else None
    if args.param_interval is None:
        sys_ = load_lp(text)
        idx = [sys_.names.index(v) for v in order] if order else list(range(sys_.num_vars))
        proj = fm_eliminate(sys_, idx)
        _emit({"feasible": projection_feasible(proj), "rows": format_lp(proj).splitlines()}, out)
        return
    psys = load_lp(text, Interval.parse(args.param_interval))
    try:
        keep = [args.keep] if args.keep else []
        cells = parametric_eliminate(psys, order, keep=keep) if order else \
            parametric_eliminate(psys, None, keep=keep)
    except KeyError as e:
        raise InputError(str(e)) from e
    doc = {"cells": [{"cell": str(c), "rows": [r.format(psys.names) for r in rows]}
                     for c, rows in cells]}
    if args.threshold:
        try:
            th = exact_threshold(psys, psys.interval, order, args.keep)
        except NoThresholdInInterval as e:
            doc["threshold"] = None
            doc["reason"] = str(e)
        else:
            doc["threshold"] = th.to_json(psys.names)
            del doc["threshold"]["terminal"]
    _emit(doc, out)


# -- scaling experiment ------------------------------------------------------

@dataclass
class ExperimentRow:
    n: int
    k: Optional[int]
    m: int
    X_size: Optional[int]
    d: Optional[int]
    bound: Optional[str]
    delta_lo: Optional[str]
    delta_hi: Optional[str]
    probes: Optional[int]
    wall_time: float

    CSV_HEADER = ("n", "k", "m", "|X|", "d", "bound", "delta_lo", "delta_hi", "probes", "wall_time")


def run_scaling_experiment(config: dict, log=None) -> list[tuple[ExperimentRow, Optional[str]]]:
    """One row per modulus: sample (or take) ``X``, build, optionally bound by LP.

    Failures are recorded with the row and the run continues.  Returns
    ``(row, error)`` pairs in config order.
    """
    primes = config.get("n", [])
    seed = int(config.get("seed", 0))
    tol = Fraction(str(config.get("tol", "1/1000000")))
    verify = bool(config.get("verify", False))
    bisect = bool(config.get("bisect", verify))
    attempts = int(config.get("max_attempts", 50))
    per_n = config.get("per_n", {})
    out = []
    for n in primes:
        n = int(n)
        opts = {**config, **per_n.get(str(n), {})}
        m = int(opts["m"]) if opts.get("m") is not None else default_m(n)
        k = int(opts["k"]) if opts.get("k") is not None else None
        start = time.perf_counter()
        row = ExperimentRow(n, k, m, None, None, None, None, None, None, 0.0)
        err = None
        try:
            if opts.get("x") is not None:
                X = sorted({int(x) for x in opts["x"]} | {-int(x) for x in opts["x"]})
            else:
                if k is None:
                    raise InputError(f"n={n}: give k or a fixed x")
                X = list(sample_X(n, k, m, seed, attempts).X)
            params, wt = cayley_construction(n, X, m)
            row.X_size, row.d, row.bound = len(params.X), params.d, str(params.bound)
            if verify:
                tpl = invariant_template(wt)
                probes = 0
                lo = Fraction(1)
                # the closer of the two probe points, so lo >= bound - tol holds
                t = max(params.bound * (1 - Fraction(1, 10 ** 6)), params.bound - tol)
                if t > 1:
                    probes += 1
                    if feasible(tpl.at(t)).feasible:
                        raise PathMetricError(f"n={n}: LP feasible below the bound at t={t}")
                    lo = t
                hi = None
                if bisect:
                    res = delta_bisect(tpl, tol)
                    probes += res.probes
                    lo, hi = max(lo, res.lo), res.hi
                row.delta_lo = str(lo)
                row.delta_hi = str(hi) if hi is not None else None
                row.probes = probes
        except PathMetricError as e:
            err = f"{type(e).__name__}: {e}"
            if log is not None:
                print(f"scaling: n={n}: {err}", file=log)
        row.wall_time = round(time.perf_counter() - start, 3)
        out.append((row, err))
    return out


def cmd_scaling(args, out):
    config = _read_json(args.config)
    results = run_scaling_experiment(config, log=sys.stderr)
    if args.csv:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(ExperimentRow.CSV_HEADER)
        for row, _ in results:
            w.writerow(["" if getattr(row, f.name) is None else getattr(row, f.name)
                        for f in fields(row)])
    else:
        rows = []
        for row, err in results:
            d = asdict(row)
            d["|X|"] = d.pop("X_size")
            if err:
                d["error"] = err
            rows.append(d)
        _emit({"rows": rows}, out)


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pathmetric",
                                description="Consistent path systems and their metric approximations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="validate consistency and neighborliness")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("delta", help="bracket Delta by exact bisection")
    s.add_argument("file")
    s.add_argument("--invariant", action="store_true", help="use the class-reduced LP")
    s.add_argument("--tol", default="1/1000000")
    s.add_argument("--float-prepass", action="store_true",
                   help="narrow the search with a floating-point LP first (needs scipy)")
    s.add_argument("--cert-out", help="write the certificate at hi to this file")
    s.add_argument("--with-evidence", action="store_true", help="include the Farkas vector at lo")
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("is-metric", help="decide whether the paths are shortest paths of a metric")
    s.add_argument("file")
    s.set_defaults(func=cmd_is_metric)

    s = sub.add_parser("verify", help="check a metric certificate against a system")
    s.add_argument("system")
    s.add_argument("cert")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="generate built-in systems")
    s.add_argument("what", choices=["petersen", "paley", "cayley", "sample"])
    s.add_argument("--p", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--x", help="comma-separated generators; negatives are added")
    s.add_argument("--m", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--attempts", type=int, default=50)
    s.add_argument("--out", help="write the system here instead of stdout")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("expand", help="expand a word table into a full path system")
    s.add_argument("file")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("fm", help="Fourier-Motzkin elimination of an lp/v1 file")
    s.add_argument("file")
    s.add_argument("--param-interval", help="interval for t, e.g. '(1,6/5]' or '1,2'")
    s.add_argument("--order", help="comma-separated variables to eliminate")
    s.add_argument("--keep", help="variable kept (and required positive for --threshold)")
    s.add_argument("--threshold", action="store_true", help="also report the exact threshold")
    s.set_defaults(func=cmd_fm)

    s = sub.add_parser("scaling", help="run the lower-bound scaling experiment")
    s.add_argument("--config", required=True)
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_scaling)
    return p


def execute(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        args.func(args, out)
    except (ResourceCap, SamplingExhausted) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except PathMetricError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return EXIT_OK


def main() -> None:
    sys.exit(execute())


if __name__ == "__main__":
    main()
