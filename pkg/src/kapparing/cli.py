"""Command-line interface.

Exit status: 0 on success, 1 when a verification suite fails, 2 on invalid
input.  JSON is printed by default; ``--format csv`` switches to CSV.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import cache as matrix_cache
from .kappa import KappaPoly
from .linalg import determinant, format_rational, partition_label
from .partitions import enumerate_bounded, enumerate_P_delta, enumerate_partitions
from .relations import determinant_formula, determinant_formula_as_printed, matrix_X
from .ring import ReductionError, RingContext, canonical_basis, dimension, reduce
from .series import F_series
from .verify import SUITES, run_suite


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _parse_alpha(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"alpha must be a comma list of integers, got {text!r}")


def _cache_dir(args) -> Path | None:
    if getattr(args, "no_cache", False):
        return None
    if getattr(args, "cache_dir", None):
        return Path(args.cache_dir)
    return matrix_cache.default_cache_dir()


def cmd_partitions(args) -> tuple[int, str]:
    if args.delta is not None:
        parts = enumerate_P_delta(args.d, args.delta)
    elif args.k is not None:
        parts = enumerate_bounded(args.d, args.k)
    else:
        parts = enumerate_partitions(args.d)
    if args.format == "csv":
        return 0, _csv([list(p) for p in parts])
    return 0, _dump([list(p) for p in parts]) + "\n"


def cmd_matrix(args) -> tuple[int, str]:
    delta = args.delta or 0
    m = matrix_cache.load_or_build(args.kind, args.d, delta, _cache_dir(args))
    m = m.with_meta(args.kind, args.d, delta)
    if args.format == "csv":
        return 0, m.to_csv()
    return 0, m.to_json() + "\n"


def cmd_verify(args) -> tuple[int, str]:
    report = run_suite(args.suite, d=args.d, zeta=args.zeta)
    code = 0 if report["passed"] else 1
    if args.format == "csv":
        rows = [["case", "ok"]] + [[c["case"], "pass" if c["ok"] else "FAIL"] for c in report["cases"]]
        return code, _csv(rows)
    return code, _dump(report) + "\n"


def cmd_series(args) -> tuple[int, str]:
    f = F_series(args.alpha, args.order)
    if args.format == "csv":
        return 0, _csv([["n", "coefficient"]] + [[n, format_rational(c)] for n, c in enumerate(f.coeffs)])
    return 0, f.to_json(alpha=list(args.alpha)) + "\n"


def _context(args) -> RingContext:
    if args.g is None or args.n is None:
        raise ValueError("--g and --n are required")
    return RingContext(args.g, args.n)


def cmd_dim(args) -> tuple[int, str]:
    ctx = _context(args)
    basis = canonical_basis(ctx, args.d)
    obj = {
        "g": ctx.g,
        "n": ctx.n,
        "d": args.d,
        "zeta": ctx.zeta,
        "dimension": dimension(ctx, args.d),
        "basis": [list(p) for p in basis],
    }
    if args.format == "csv":
        return 0, _csv([["g", "n", "d", "dimension"], [ctx.g, ctx.n, args.d, obj["dimension"]]])
    return 0, _dump(obj) + "\n"


def cmd_reduce(args) -> tuple[int, str]:
    ctx = _context(args)
    try:
        raw = json.loads(args.poly)
    except json.JSONDecodeError as exc:
        raise ValueError(f"--poly is not valid JSON: {exc}")
    terms = {tuple(json.loads(k)): v for k, v in raw.items()}
    f = KappaPoly(terms, None, ctx.zeta)
    if args.d is not None and f.terms and f.degree != args.d:
        raise ValueError(f"polynomial has degree {f.degree}, not {args.d}")
    if args.d is not None and not f.terms:
        f = KappaPoly.zero(args.d, ctx.zeta)
    expr = reduce(ctx, f)
    if args.format == "csv":
        return 0, _csv([["partition", "coefficient"]] + [[partition_label(p), format_rational(c)] for p, c in expr.coords.items()])
    return 0, expr.to_json() + "\n"


def cmd_det(args) -> tuple[int, str]:
    formula = determinant_formula(args.d)
    elim = determinant(matrix_X(args.d, 0))
    obj = {
        "d": args.d,
        "formula": format_rational(formula),
        "formula_without_corner_factor": format_rational(determinant_formula_as_printed(args.d)),
        "elimination": format_rational(elim),
        "agree": formula == elim,
    }
    if args.format == "csv":
        return 0 if obj["agree"] else 1, _csv([list(obj), list(obj.values())])
    return 0 if obj["agree"] else 1, _dump(obj) + "\n"


def cmd_cache(args) -> tuple[int, str]:
    directory = Path(args.cache_dir) if args.cache_dir else matrix_cache.default_cache_dir()
    if args.action == "list":
        obj = {"cache_dir": str(directory), "entries": matrix_cache.list_entries(directory)}
    elif args.action == "clear":
        obj = {"cache_dir": str(directory), "removed": matrix_cache.clear(directory)}
    else:
        if args.kind is None or args.d is None:
            raise ValueError("cache build needs --kind and --d")
        delta = args.delta or 0
        matrix_cache.load_or_build(args.kind, args.d, delta, directory)
        obj = {"cache_dir": str(directory), "built": matrix_cache.cache_path(directory, args.kind, args.d, delta).name}
    return 0, _dump(obj) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kapparing", description="Exact kappa-ring calculus for curves of compact type.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, cache=False):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if cache:
            p.add_argument("--no-cache", action="store_true", help="recompute instead of using the matrix cache")
            p.add_argument("--cache-dir", help="cache directory (default: $KAPPA_CACHE_DIR)")

    p = sub.add_parser("partitions", help="list partitions in canonical order")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, help="at most k parts")
    p.add_argument("--delta", type=int, help="only lengths >= delta + 2")
    common(p)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("matrix", help="print X, Y, L or M")
    p.add_argument("--kind", choices=matrix_cache.KINDS, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--delta", type=int, default=0)
    common(p, cache=True)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--d", type=int, help="largest degree checked")
    p.add_argument("--zeta", type=int, help="largest zeta checked (rank suite)")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("series", help="x-coefficients of F_alpha")
    p.add_argument("--alpha", type=_parse_alpha, default=(), help='comma list, "" for the empty vector')
    p.add_argument("--order", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("reduce", help="express a kappa polynomial in the canonical basis")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--poly", required=True, help='JSON map, e.g. \'{"[1,1]": "1", "[2]": "-1/2"}\'')
    common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("dim", help="dimension and basis of kappa^d")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("det", help="closed-form determinant of X_0(d) against elimination")
    p.add_argument("--d", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("cache", help="manage the matrix cache")
    p.add_argument("action", choices=("list", "clear", "build"))
    p.add_argument("--kind", choices=matrix_cache.KINDS)
    p.add_argument("--d", type=int)
    p.add_argument("--delta", type=int, default=0)
    p.add_argument("--cache-dir")
    p.set_defaults(func=cmd_cache)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, text = args.func(args)
    except ReductionError as exc:
        print(f"internal consistency failure: {exc}", file=stderr)
        return 1
    except (ValueError, KeyError, ArithmeticError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
