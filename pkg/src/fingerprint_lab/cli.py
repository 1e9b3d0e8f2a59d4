"""Command-line front end.

Exit codes: 0 success or valid scheme, 1 invalid scheme, 2 usage or parse
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from . import kernels
from .bounds import gap_report, welch_lower_bound
from .constructions import assemble_scheme, weyl_heisenberg_family
from .errors import FingerprintError, ValidationError
from .optimizer import OptimizerConfig, optimize
from .protocol import (
    acceptance_probability_direct,
    acceptance_probability_reduced,
    validate_one_sided,
    worst_case_error,
)
from .schemefile import SchemeFileError, dumps, dumps_scheme, format_float, read_scheme

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(v, short: bool = False) -> str:
    if isinstance(v, float):
        return repr(v) if short else format_float(v)
    if v is None:
        return ""
    return str(v)


def _render(rows: list[dict], fmt: str, extra: dict | None = None) -> str:
    """Render a list of flat rows as table, CSV or JSON."""
    if fmt == "json":
        doc = {"rows": rows}
        doc.update(extra or {})
        return dumps(doc)
    cols = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_fmt(r[c]) for c in cols])
        return buf.getvalue()
    cells = [cols] + [[_fmt(r[c], short=True) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    lines = ["  ".join(cell.rjust(wd) for cell, wd in zip(row, widths)) for row in cells]
    for key, val in (extra or {}).items():
        lines.append(f"{key}: {_fmt(val, short=True)}")
    return "\n".join(lines) + "\n"


def _m_range(text: str) -> range:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError("empty range")
    return range(lo, hi + 1)


def cmd_bound(args) -> int:
    ms = list(args.m_range) if args.m_range is not None else [args.m]
    rows = []
    for m in ms:
        try:
            rep = welch_lower_bound(m, args.ns)
        except FingerprintError as exc:
            raise UsageError(str(exc)) from None
        rows.append({"m": m, "ns": args.ns, "raw_bound": rep.raw_bound, "effective_bound": rep.effective_bound})
    sys.stdout.write(_render(rows, args.format))
    return EXIT_OK


def cmd_validate(args) -> int:
    scheme = read_scheme(args.scheme_file)
    rep = validate_one_sided(scheme, args.tol)
    row = {
        "is_valid": rep.is_valid,
        "max_diagonal_deviation": rep.max_diagonal_deviation,
        "max_constancy_deviation": rep.max_constancy_deviation,
        "offending_message": rep.offending_message,
        "tol": args.tol,
    }
    if args.format == "json":
        sys.stdout.write(dumps(row))
    else:
        sys.stdout.write(_render([row], args.format))
    return EXIT_OK if rep.is_valid else EXIT_INVALID


def cmd_simulate(args) -> int:
    scheme = read_scheme(args.scheme_file)
    if args.all_pairs:
        pairs = [(x, y) for x in range(scheme.m) for y in range(scheme.m)]
    else:
        if args.x is None or args.y is None:
            raise UsageError("give --x and --y, or --all-pairs")
        for v in (args.x, args.y):
            if not 0 <= v < scheme.m:
                raise UsageError(f"message index {v} outside 0..{scheme.m - 1}")
        pairs = [(args.x, args.y)]
    rows = []
    for x, y in pairs:
        d = acceptance_probability_direct(scheme, x, y)
        r = acceptance_probability_reduced(scheme, x, y)
        rows.append({"x": x, "y": y, "direct": d, "reduced": r, "abs_diff": abs(d - r)})
    extra = {}
    code = EXIT_OK
    if args.all_pairs:
        extra["max_abs_diff"] = max(r["abs_diff"] for r in rows)
        try:
            wc = worst_case_error(scheme, args.tol)
        except ValidationError as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = EXIT_INVALID
        else:
            extra["p_wce"] = wc.p_wce
            extra["argmax_pair"] = list(wc.argmax_pair)
    if args.format == "csv":
        sys.stdout.write(_render(rows, "csv"))
        for key, val in extra.items():
            print(f"# {key}: {' '.join(map(_fmt, val)) if isinstance(val, list) else _fmt(val)}", file=sys.stderr)
    else:
        sys.stdout.write(_render(rows, args.format, extra))
    return code


def _write_or_print(text: str, path) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_construct(args) -> int:
    try:
        family = weyl_heisenberg_family(args.d, args.m)
    except FingerprintError as exc:
        raise UsageError(str(exc)) from None
    scheme = assemble_scheme(family)
    _write_or_print(dumps_scheme(scheme), args.out)
    return EXIT_OK


def cmd_optimize(args) -> int:
    try:
        cfg = OptimizerConfig(
            m=args.m,
            n=args.n,
            max_iterations=args.iters,
            step_size=args.step,
            smoothing_beta=args.beta,
            beta_growth=args.beta_growth,
            seed=args.seed,
            init=args.init,
            stop_gap=args.stop_gap,
            stop_stall=args.stop_stall,
        )
    except (FingerprintError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    sol = optimize(cfg)
    scheme = assemble_scheme(sol.bob_ops, label=sol.bob_ops.label)
    if args.out is not None:
        Path(args.out).write_text(dumps_scheme(scheme))
    if args.trace is not None:
        with open(args.trace, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["iteration", "coherence"])
            for it, coh in sol.trace:
                w.writerow([it, format_float(coh)])
    rep = gap_report(scheme)
    summary = {
        "m": cfg.m,
        "n": cfg.n,
        "seed": cfg.seed,
        "init": cfg.init,
        "iterations_used": sol.iterations_used,
        "stop_reason": sol.stop_reason,
        "coherence": sol.coherence,
        "p_wce": rep.achieved,
        "raw_bound": rep.raw_bound,
        "effective_bound": rep.effective_bound,
        "gap": rep.gap,
        "backend": kernels.BACKEND,
    }
    if args.format == "json":
        sys.stdout.write(dumps(summary))
    else:
        sys.stdout.write(_render([summary], args.format))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fingerprint-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_format(sp):
        sp.add_argument("--format", choices=("json", "csv", "table"), default="table")

    b = sub.add_parser("bound", help="lower bound on worst-case error for (m, N_s)")
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--m", type=int)
    g.add_argument("--m-range", type=_m_range, metavar="A:B", help="inclusive range of m")
    b.add_argument("--ns", type=int, required=True, help="Schmidt number")
    add_format(b)
    b.set_defaults(func=cmd_bound)

    v = sub.add_parser("validate", help="check the one-sided-error constraint")
    v.add_argument("scheme_file")
    v.add_argument("--tol", type=float, default=1e-9)
    add_format(v)
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("simulate", help="acceptance probabilities by simulation and by trace formula")
    s.add_argument("scheme_file")
    s.add_argument("--x", type=int)
    s.add_argument("--y", type=int)
    s.add_argument("--all-pairs", action="store_true")
    s.add_argument("--tol", type=float, default=1e-9)
    add_format(s)
    s.set_defaults(func=cmd_simulate)

    c = sub.add_parser("construct", help="write a constructed scheme file")
    c.add_argument("--family", choices=("weyl-heisenberg",), default="weyl-heisenberg")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    o = sub.add_parser("optimize", help="search for a Bob set with small worst-case overlap")
    o.add_argument("--m", type=int, required=True)
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--iters", type=int, default=5000)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--init", choices=("haar", "weyl-heisenberg"), default="haar")
    o.add_argument("--beta", type=float, default=50.0)
    o.add_argument("--beta-growth", type=float, default=1.5)
    o.add_argument("--step", type=float, default=0.05)
    o.add_argument("--stop-gap", type=float, default=1e-9)
    o.add_argument("--stop-stall", type=int, default=1000)
    o.add_argument("--out")
    o.add_argument("--trace")
    add_format(o)
    o.set_defaults(func=cmd_optimize)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, SchemeFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
