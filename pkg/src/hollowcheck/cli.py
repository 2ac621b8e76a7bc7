"""Command-line front end.

Subcommands:
  check   parse a system, standardize, run the emptiness test
  oracle  exact Fourier-Motzkin feasibility with a rational witness
  probe   randomized lemma/theorem probes and oracle agreement runs
  gen     write a random admissible instance file

Exit codes: 0 not-proven-empty, 1 empty, 2 input/usage error, 3 internal
error or soundness violation.

Input format: first data line "m n", then m lines of n+1 numbers (row of
A then b_i).  Numbers are integers, decimals, or fractions "p/q"; "#"
starts a comment; blank lines are ignored; path "-" reads stdin.
"""
from __future__ import annotations

import argparse
import json
import os
import sys as _sys
from fractions import Fraction

from . import harness
from .densemat import FLOAT64, RATIONAL, Matrix, Vector
from .emptiness import (EMPTY, MODE_ALGORITHM, MODE_THEOREM, decide)
from .interval import is_neg_inf, is_pos_inf
from .oracle import FEASIBLE, fm_feasible
from .standardize import (EarlyEmpty, FORMS, RawSystem, StandardSystem,
                          TriviallyNonEmpty, standardize)

EXIT_NOT_PROVEN_EMPTY = 0
EXIT_EMPTY = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class ParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class DimensionError(ParseError):
    pass


def parse_system(text: str, form: str = "ineq") -> RawSystem:
    header = None
    rows = []
    bounds = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 2:
                raise ParseError(lineno, "expected header 'm n'")
            try:
                m, n = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError(lineno, f"bad header {line!r}")
            if m < 1 or n < 1:
                raise ParseError(lineno, "m and n must be >= 1")
            header = (m, n)
            continue
        m, n = header
        if len(rows) == m:
            raise ParseError(lineno, f"more than {m} data rows")
        if len(tokens) != n + 1:
            raise DimensionError(
                lineno, f"expected {n + 1} numbers, got {len(tokens)}")
        vals = []
        for col, tok in enumerate(tokens, start=1):
            try:
                vals.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise ParseError(lineno, f"bad number {tok!r} (column {col})")
        rows.append(vals[:-1])
        bounds.append(vals[-1])
    if header is None:
        raise ParseError(0, "empty input")
    if len(rows) != header[0]:
        raise ParseError(0, f"expected {header[0]} rows, got {len(rows)}")
    return RawSystem(form, Matrix.from_rows(rows), Vector.from_list(bounds))


def _frac_str(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def _endpoint_str(x) -> str:
    if is_neg_inf(x):
        return "-inf"
    if is_pos_inf(x):
        return "+inf"
    return _frac_str(x)


def _vec_json(v: Vector) -> list:
    return [_frac_str(x) for x in v.entries]


def report_to_jsonable(report, backend: str, oracle_result=None) -> dict:
    cert = None
    if report.certificate is not None:
        c = report.certificate
        cert = {
            "family": c.test.family,
            "k_prime": _vec_json(c.test.kprime),
            "interval": [_endpoint_str(c.interval.lo),
                         _endpoint_str(c.interval.hi)],
            "farkas_y": _vec_json(c.farkas_y),
        }
    out = {
        "verdict": report.verdict,
        "mode": report.mode,
        "backend": backend,
        "tests_run": report.tests_run,
        "families": dict(sorted(report.family_counts.items())),
        "certificate": cert,
    }
    if oracle_result is not None:
        out["oracle"] = {
            "status": oracle_result.status,
            "witness": _vec_json(oracle_result.witness)
            if oracle_result.witness is not None else None,
        }
    return out


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True, indent=2))
    out.write("\n")


def _read_input(path: str) -> str:
    if path == "-":
        return _sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _thread_cap() -> int:
    raw = os.environ.get("HOLLOWCHECK_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"HOLLOWCHECK_THREADS must be a positive integer, "
                         f"got {raw!r}")
    if cap < 1:
        raise ValueError("HOLLOWCHECK_THREADS must be >= 1")
    return cap


def _to_backend(sys_std: StandardSystem, backend: str) -> StandardSystem:
    if backend == RATIONAL:
        return sys_std
    A = Matrix.from_rows(sys_std.A.row_lists(), FLOAT64)
    b = Vector.from_list(list(sys_std.b.entries), FLOAT64)
    return StandardSystem(A, b, sys_std.provenance)


def cmd_check(args, out) -> int:
    _thread_cap()  # validate the env var; evaluation itself is sequential
    text = _read_input(args.input)
    raw = parse_system(text, args.form)
    std = standardize(raw)

    if isinstance(std, EarlyEmpty):
        y = [Fraction(0)] * raw.Atilde.rows
        y[std.row] = Fraction(1)
        obj = {
            "verdict": EMPTY,
            "mode": args.mode,
            "backend": args.backend,
            "tests_run": 0,
            "families": {},
            "certificate": {
                "family": "presolve",
                "k_prime": None,
                "interval": None,
                "farkas_y": [_frac_str(x) for x in y],
            },
        }
        if args.json:
            _emit_json(obj, out)
        else:
            out.write("EMPTY (presolve: " + std.detail + ")\n")
            out.write("farkas_y = " + " ".join(obj["certificate"]["farkas_y"]) + "\n")
        return EXIT_EMPTY

    if isinstance(std, TriviallyNonEmpty):
        obj = {
            "verdict": "NOT_PROVEN_EMPTY",
            "mode": args.mode,
            "backend": args.backend,
            "tests_run": 0,
            "families": {},
            "certificate": None,
            "note": "all constraints redundant; polyhedron is the whole space",
        }
        if args.json:
            _emit_json(obj, out)
        else:
            out.write("NOT-PROVEN-EMPTY (trivial: whole space)\n")
        return EXIT_NOT_PROVEN_EMPTY

    report = decide(_to_backend(std, args.backend), mode=args.mode,
                    stated_order=args.stated_order)
    oracle_result = None
    if args.oracle_check:
        oracle_result = fm_feasible(std.A, std.b)
        if report.is_empty and oracle_result.status == FEASIBLE:
            _sys.stderr.write("soundness violation: Empty verdict on an "
                              "oracle-feasible system\n")
            return EXIT_INTERNAL

    obj = report_to_jsonable(report, args.backend, oracle_result)
    if args.json:
        _emit_json(obj, out)
    else:
        if report.is_empty:
            out.write("EMPTY\n")
            out.write("failing family: "
                      + report.certificate.test.label() + "\n")
            out.write("k_prime  = "
                      + " ".join(_vec_json(report.certificate.test.kprime)) + "\n")
            out.write("interval = ["
                      + _endpoint_str(report.certificate.interval.lo) + ", "
                      + _endpoint_str(report.certificate.interval.hi) + "]\n")
            out.write("farkas_y = "
                      + " ".join(_vec_json(report.certificate.farkas_y)) + "\n")
        else:
            out.write("NOT-PROVEN-EMPTY (claimed nonempty)\n")
        out.write(f"tests run: {report.tests_run}\n")
        if oracle_result is not None:
            out.write(f"oracle: {oracle_result.status}\n")
            if oracle_result.witness is not None:
                wit = std.provenance.original_point(oracle_result.witness)
                out.write("witness (original variables): "
                          + " ".join(_vec_json(wit)) + "\n")
    return EXIT_EMPTY if report.is_empty else EXIT_NOT_PROVEN_EMPTY


def cmd_oracle(args, out) -> int:
    text = _read_input(args.input)
    raw = parse_system(text, args.form)
    std = standardize(raw)
    if isinstance(std, EarlyEmpty):
        obj = {"status": "infeasible", "witness": None, "presolve": std.detail}
        _emit_json(obj, out) if args.json else out.write("infeasible (presolve)\n")
        return EXIT_EMPTY
    if isinstance(std, TriviallyNonEmpty):
        zero = ["0/1"] * raw.Atilde.cols
        obj = {"status": "feasible", "witness": zero}
        _emit_json(obj, out) if args.json else out.write("feasible, witness 0\n")
        return EXIT_NOT_PROVEN_EMPTY
    res = fm_feasible(std.A, std.b)
    wit = None
    if res.witness is not None:
        wit = _vec_json(std.provenance.original_point(res.witness))
    obj = {"status": res.status, "witness": wit}
    if args.json:
        _emit_json(obj, out)
    else:
        out.write(res.status + "\n")
        if wit is not None:
            out.write("witness (original variables): " + " ".join(wit) + "\n")
    return EXIT_NOT_PROVEN_EMPTY if res.status == FEASIBLE else EXIT_EMPTY


def _agreement_specs(count, seed, m_max, n_max, entry_range):
    rng_specs = []
    s = seed
    i = 0
    while len(rng_specs) < count:
        m = 2 + (i % (m_max - 1))
        n = 1 + (i % n_max)
        if m > n:
            rng_specs.append(harness.GenSpec(seed=s + i, m=m, n=n,
                                             entry_range=entry_range,
                                             b_range=entry_range))
        i += 1
    return rng_specs


def cmd_probe(args, out) -> int:
    results = {}
    if args.suite in ("lemma1", "all"):
        oks = 0
        for i in range(args.instances):
            spec = harness.GenSpec(seed=args.seed + i, m=4 + i % 5, n=1 + i % 3)
            sysi = harness.gen_random_system(spec)
            harness.probe_lemma1(sysi, trials=args.trials, seed=args.seed + i)
            oks += 1
        results["lemma1"] = {"instances": oks, "ok": True}
    if args.suite in ("lemma2", "all"):
        oks = 0
        for i in range(args.instances):
            n = 1 + i % 4
            k = 1 + i % n
            harness.probe_lemma2(n=n, k=k, trials=args.trials, seed=args.seed + i)
            oks += 1
        results["lemma2"] = {"instances": oks, "ok": True}
    if args.suite in ("theorem1", "all"):
        agree = 0
        total = 0
        for i in range(args.instances):
            spec = harness.GenSpec(seed=args.seed + i, m=4 + i % 5, n=1 + i % 3)
            sysi = harness.gen_random_system(spec)
            rep = harness.probe_theorem1(sysi)
            total += len(rep["rows"])
            agree += sum(1 for r in rep["rows"] if r["agree"])
        results["theorem1"] = {"rows_checked": total, "rows_agree": agree}
    if args.suite in ("agreement", "all"):
        specs = _agreement_specs(args.instances, args.seed, 8, 3, 5)
        stats = harness.agreement_run(specs, mode=args.mode)
        results["agreement"] = stats.to_jsonable()
    _emit_json(results, out)
    return EXIT_NOT_PROVEN_EMPTY


def cmd_gen(args, out) -> int:
    spec = harness.GenSpec(seed=args.seed, m=args.m, n=args.n,
                           entry_range=args.range, b_range=args.range)
    sysg = harness.gen_random_system(spec)
    lines = [f"# generated instance seed={args.seed}",
             f"{sysg.m} {sysg.n}"]
    for i in range(sysg.m):
        row = [str(sysg.A.at(i, j)) for j in range(sysg.n)]
        row.append(str(sysg.b[i]))
        lines.append(" ".join(row))
    text = "\n".join(lines) + "\n"
    if args.output == "-":
        out.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_NOT_PROVEN_EMPTY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hollowcheck",
                                description="algebraic polyhedron emptiness test")
    sub = p.add_subparsers(dest="subcommand", required=True)

    form_choices = sorted(set(FORMS) | {f.replace("_", "-") for f in FORMS})

    def common_io(sp):
        sp.add_argument("input", help="instance file, or - for stdin")
        sp.add_argument("--form", choices=form_choices, default="ineq",
                        type=lambda s: s.replace("-", "_"))
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("check", help="run the emptiness test")
    common_io(sp)
    sp.add_argument("--mode", choices=[MODE_ALGORITHM, MODE_THEOREM],
                    default=MODE_ALGORITHM)
    sp.add_argument("--backend", choices=[RATIONAL, FLOAT64], default=RATIONAL)
    sp.add_argument("--tolerance", type=float, default=None,
                    help="float64 backend zero tolerance")
    sp.add_argument("--stated-order", action="store_true", dest="stated_order",
                    help="test families in the originally stated order")
    sp.add_argument("--oracle-check", action="store_true", dest="oracle_check")
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("oracle", help="exact feasibility via Fourier-Motzkin")
    common_io(sp)
    sp.set_defaults(fn=cmd_oracle)

    sp = sub.add_parser("probe", help="randomized probe suites")
    sp.add_argument("--suite",
                    choices=["lemma1", "lemma2", "theorem1", "agreement", "all"],
                    default="all")
    sp.add_argument("--instances", type=int, default=harness.DEFAULT_INSTANCES)
    sp.add_argument("--trials", type=int, default=harness.DEFAULT_TRIALS)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=[MODE_ALGORITHM, MODE_THEOREM],
                    default=MODE_ALGORITHM)
    sp.set_defaults(fn=cmd_probe)

    sp = sub.add_parser("gen", help="write a random admissible instance")
    sp.add_argument("output", help="output path, or - for stdout")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-m", type=int, default=5)
    sp.add_argument("-n", type=int, default=2)
    sp.add_argument("--range", type=int, default=5)
    sp.set_defaults(fn=cmd_gen)
    return p


def run(argv=None, out=None) -> int:
    out = out or _sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize others
        return EXIT_USAGE if exc.code not in (0,) else 0
    if getattr(args, "tolerance", None) is not None \
            and getattr(args, "backend", RATIONAL) != FLOAT64:
        _sys.stderr.write("--tolerance requires --backend float64\n")
        return EXIT_USAGE
    try:
        return args.fn(args, out)
    except (ParseError, FileNotFoundError, ValueError) as exc:
        _sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except harness.SoundnessViolation as exc:
        _sys.stderr.write(f"soundness violation: {exc}\n")
        return EXIT_INTERNAL
    except Exception as exc:  # internal error
        _sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
