"""Command-line front end: gen, bound, discrepancy, verify.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.  The
index-enumeration budget defaults to the ETKBOUND_BUDGET environment variable
when set, and --budget overrides both.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass

from .badic import DEFAULT_BUDGET, BudgetExceededError
from .bounds import EXTREME, STAR, BoundReport, etk_bound
from .oracle import (
    CapExceededError,
    DiscrepancyResult,
    extreme_discrepancy_exact,
    star_discrepancy_exact,
)
from .pointfile import read_point_set, write_point_set
from .sequences import (
    DigitalConfig,
    GeneratorMatrix,
    HaltonConfig,
    PointSet,
    VdcConfig,
    config_from_string,
    generate_points,
    hybrid_points,
)
from .systems import BADIC, WALSH, HybridSystemSpec
from .verify import SUITES, run_suites

__all__ = ["ReportRow", "main"]

BUDGET_ENV = "ETKBOUND_BUDGET"

_TAG_LETTERS = {"w": WALSH, "b": BADIC}


class UsageError(Exception):
    """Bad flags or bad input data; reported on stderr with exit status 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract here is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class ReportRow:
    """One (g, variant) line of a bound report.

    bound_total is epsilon + weighted_sum by construction; margin is present
    only when the exact oracle ran.  runtime_ms is wall-clock and is the one
    field excluded from determinism guarantees.
    """

    variant: str
    n_points: int
    g: tuple[int, ...]
    epsilon: float
    weighted_sum: float
    bound_total: float
    exact_discrepancy: float | None
    margin: float | None
    runtime_ms: float
    per_index: list[tuple[tuple[int, ...], float, float]] | None = None


def _parse_ints(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}")


def _parse_tags(text: str, s: int) -> tuple[str, ...]:
    tags = []
    for part in text.split(","):
        part = part.strip().lower()
        if part in _TAG_LETTERS:
            tags.append(_TAG_LETTERS[part])
        elif part in (WALSH, BADIC):
            tags.append(part)
        else:
            raise UsageError(f"unknown tag {part!r}, expected w/walsh or b/badic")
    if len(tags) != s:
        raise UsageError(f"expected {s} tags, got {len(tags)}")
    return tuple(tags)


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be an integer, got {raw!r}")
    if value <= 0:
        raise UsageError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


def _open_points(path: str) -> PointSet:
    try:
        if path == "-":
            return read_point_set(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return read_point_set(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}")


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        if text and not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}")


def cmd_gen(args) -> int:
    if args.kind == "vdc":
        config = VdcConfig(args.base)
        points = generate_points(config, args.n)
    elif args.kind == "halton":
        config = HaltonConfig(_parse_ints(args.bases, "--bases"))
        points = generate_points(config, args.n)
    elif args.kind == "digital":
        base = args.base
        if args.identity:
            matrices = tuple(GeneratorMatrix.identity(base, args.m) for _ in range(args.s))
        else:
            import random

            rng = random.Random(args.seed)
            matrices = tuple(GeneratorMatrix.random(base, args.m, rng) for _ in range(args.s))
        label = "identity" if args.identity else f"seed={args.seed}"
        config = DigitalConfig(base, matrices, label=f"digital:{base},s={args.s},m={args.m},{label}")
        points = generate_points(config, args.n)
    else:  # hybrid
        walsh_part = config_from_string(args.walsh) if args.walsh else None
        badic_part = config_from_string(args.badic) if args.badic else None
        if walsh_part is None and badic_part is None:
            raise UsageError("hybrid needs at least one of --walsh/--badic")
        w_bases = walsh_part.bases if walsh_part else ()
        b_bases = badic_part.bases if badic_part else ()
        if args.tags:
            tags = _parse_tags(args.tags, len(w_bases) + len(b_bases))
        else:
            tags = (WALSH,) * len(w_bases) + (BADIC,) * len(b_bases)
        w_iter, b_iter = iter(w_bases), iter(b_bases)
        try:
            bases = tuple(
                next(w_iter) if t == WALSH else next(b_iter) for t in tags
            )
        except StopIteration:
            raise UsageError("--tags does not match the part dimensions")
        spec = HybridSystemSpec.from_tags(bases, tags)
        points = hybrid_points(spec, walsh_part, badic_part, args.n)
    buf = io.StringIO()
    write_point_set(points, buf)
    _write_output(buf.getvalue(), args.out)
    return 0


def _variants(choice: str) -> list[str]:
    return [EXTREME, STAR] if choice == "both" else [choice]


def _oracle(points: PointSet, variant: str, max_points: int | None) -> DiscrepancyResult:
    if variant == STAR:
        return star_discrepancy_exact(points, max_points=max_points)
    return extreme_discrepancy_exact(points, max_points=max_points)


def _bound_rows(args, points: PointSet, spec: HybridSystemSpec, budget: int) -> list[ReportRow]:
    g_list = []
    for raw in args.g:
        g = _parse_ints(raw, "--g")
        if len(g) == 1 and spec.s > 1:
            g = g * spec.s
        if len(g) != spec.s:
            raise UsageError(f"--g {raw} has {len(g)} components, expected {spec.s}")
        g_list.append(g)
    oracle_cache: dict[str, DiscrepancyResult] = {}
    rows = []
    for g in g_list:
        for variant in _variants(args.variant):
            start = time.perf_counter()
            rep: BoundReport = etk_bound(
                spec, g, points, variant, per_index=args.per_k, budget=budget
            )
            exact = margin = None
            if args.oracle:
                if variant not in oracle_cache:
                    oracle_cache[variant] = _oracle(points, variant, None)
                exact = oracle_cache[variant].value
                margin = rep.total - exact
            elapsed_ms = (time.perf_counter() - start) * 1000.0
            rows.append(
                ReportRow(
                    variant=variant,
                    n_points=points.n_points,
                    g=g,
                    epsilon=rep.epsilon,
                    weighted_sum=rep.weighted_sum,
                    bound_total=rep.total,
                    exact_discrepancy=exact,
                    margin=margin,
                    runtime_ms=elapsed_ms,
                    per_index=rep.per_index if args.per_k else None,
                )
            )
    return rows


def _rows_json(args, points: PointSet, spec: HybridSystemSpec, rows: list[ReportRow]) -> str:
    payload = {
        "schema": 1,
        "command": "bound",
        "n_points": points.n_points,
        "bases": list(spec.bases),
        "tags": list(spec.tags),
        "rows": [],
    }
    for row in rows:
        entry = {
            "variant": row.variant,
            "n": row.n_points,
            "g": list(row.g),
            "epsilon": row.epsilon,
            "weighted_sum": row.weighted_sum,
            "bound_total": row.bound_total,
            "exact_discrepancy": row.exact_discrepancy,
            "margin": row.margin,
            "runtime_ms": row.runtime_ms,
        }
        if row.per_index is not None:
            entry["per_k"] = [
                {"k": list(k), "weight": w, "abs_sum": a} for k, w, a in row.per_index
            ]
        payload["rows"].append(entry)
    return json.dumps(payload, indent=2)


_CSV_HEADER = [
    "variant",
    "n",
    "g",
    "epsilon",
    "weighted_sum",
    "bound_total",
    "exact_discrepancy",
    "margin",
    "runtime_ms",
]


def _rows_csv(rows: list[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_HEADER)
    for row in rows:
        writer.writerow(
            [
                row.variant,
                row.n_points,
                ",".join(map(str, row.g)),
                repr(row.epsilon),
                repr(row.weighted_sum),
                repr(row.bound_total),
                "" if row.exact_discrepancy is None else repr(row.exact_discrepancy),
                "" if row.margin is None else repr(row.margin),
                f"{row.runtime_ms:.3f}",
            ]
        )
    for row in rows:
        if row.per_index is None:
            continue
        buf.write(f"# per-k variant={row.variant} g={','.join(map(str, row.g))}\n")
        for k, weight, abs_sum in row.per_index:
            buf.write(f"# k={','.join(map(str, k))} weight={weight!r} abs_sum={abs_sum!r}\n")
    return buf.getvalue()


def cmd_bound(args) -> int:
    points = _open_points(args.file)
    if args.tags:
        tags = _parse_tags(args.tags, points.s)
    else:
        tags = (WALSH,) * points.s
    spec = HybridSystemSpec.from_tags(points.bases, tags)
    rows = _bound_rows(args, points, spec, _budget(args))
    if args.format == "json":
        _write_output(_rows_json(args, points, spec, rows), args.out)
    else:
        _write_output(_rows_csv(rows), args.out)
    return 0


def cmd_discrepancy(args) -> int:
    points = _open_points(args.file)
    entries = []
    for variant in _variants(args.variant):
        start = time.perf_counter()
        result = _oracle(points, variant, None)
        elapsed_ms = (time.perf_counter() - start) * 1000.0
        entries.append((variant, result, elapsed_ms))
    if args.format == "json":
        payload = {
            "schema": 1,
            "command": "discrepancy",
            "n_points": points.n_points,
            "bases": list(points.bases),
            "rows": [
                {
                    "variant": variant,
                    "value": result.value,
                    "exact": str(result.exact),
                    "witness_lower": [str(x) for x in result.witness.lower],
                    "witness_upper": [str(x) for x in result.witness.upper],
                    "closure": result.witness.closure,
                    "attained": result.attained,
                    "runtime_ms": elapsed_ms,
                }
                for variant, result, elapsed_ms in entries
            ],
        }
        _write_output(json.dumps(payload, indent=2), args.out)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["variant", "n", "value", "exact", "witness_lower", "witness_upper", "closure", "attained", "runtime_ms"]
        )
        for variant, result, elapsed_ms in entries:
            writer.writerow(
                [
                    variant,
                    points.n_points,
                    repr(result.value),
                    str(result.exact),
                    ";".join(str(x) for x in result.witness.lower),
                    ";".join(str(x) for x in result.witness.upper),
                    result.witness.closure,
                    result.attained,
                    f"{elapsed_ms:.3f}",
                ]
            )
        _write_output(buf.getvalue(), args.out)
    return 0


def cmd_verify(args) -> int:
    results = run_suites(args.suite, trials=args.trials, seed=args.seed, budget=_budget(args))
    failed = False
    for result in results:
        status = "ok" if result.ok else "FAIL"
        extra = f" ({result.summary})" if result.summary else ""
        print(f"{result.name}: {result.checks} checks, {len(result.failures)} failures {status}{extra}")
        for line in result.failures[:20]:
            print(f"  {line}")
        if len(result.failures) > 20:
            print(f"  ... {len(result.failures) - 20} more")
        failed = failed or not result.ok
    total = sum(r.checks for r in results)
    if failed:
        print(f"verification FAILED ({total} checks)")
        return 2
    print(f"all suites passed ({total} checks)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="etkbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a point set and write it as a point file")
    gen_sub = gen.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    gen_vdc = gen_sub.add_parser("vdc", help="van der Corput sequence")
    gen_vdc.add_argument("--base", type=int, required=True)
    gen_halton = gen_sub.add_parser("halton", help="Halton sequence")
    gen_halton.add_argument("--bases", required=True, help="comma-separated bases, e.g. 2,3")
    gen_digital = gen_sub.add_parser("digital", help="digital net from generator matrices")
    gen_digital.add_argument("--base", type=int, required=True)
    gen_digital.add_argument("--s", type=int, default=1, help="dimension (default 1)")
    gen_digital.add_argument("--m", type=int, default=8, help="matrix size / digit precision")
    group = gen_digital.add_mutually_exclusive_group()
    group.add_argument("--seed", type=int, default=0, help="seed for random matrices")
    group.add_argument("--identity", action="store_true", help="use identity matrices")
    gen_hybrid = gen_sub.add_parser("hybrid", help="hybrid of two generator configs")
    gen_hybrid.add_argument("--walsh", help="generator config, e.g. vdc:2 or digital:2,s=2,seed=1")
    gen_hybrid.add_argument("--badic", help="generator config, e.g. halton:3,5")
    gen_hybrid.add_argument("--tags", help="coordinate tag order, e.g. w,b,b")
    for p in (gen_vdc, gen_halton, gen_digital, gen_hybrid):
        p.add_argument("--n", type=int, required=True, help="number of points")
        p.add_argument("--out", help="output path (default stdout)")
        p.set_defaults(func=cmd_gen)

    bound = sub.add_parser("bound", help="weighted discrepancy bound for a point file")
    bound.add_argument("file", help="point file path, or - for stdin")
    bound.add_argument("--tags", help="per-coordinate tags, e.g. w,w,b (default all walsh)")
    bound.add_argument(
        "--g", action="append", required=True,
        help="resolution vector, e.g. 2,3; repeat for multiple rows",
    )
    bound.add_argument("--variant", choices=(EXTREME, STAR, "both"), default="both")
    bound.add_argument("--oracle", action="store_true", help="also run the exact oracle")
    bound.add_argument("--per-k", action="store_true", help="include the per-index table")
    bound.add_argument("--format", choices=("csv", "json"), default="csv")
    bound.add_argument("--budget", type=int, help="index enumeration budget")
    bound.add_argument("--out", help="output path (default stdout)")
    bound.set_defaults(func=cmd_bound)

    disc = sub.add_parser("discrepancy", help="exact discrepancy of a point file")
    disc.add_argument("file", help="point file path, or - for stdin")
    disc.add_argument("--variant", choices=(EXTREME, STAR, "both"), default="both")
    disc.add_argument("--format", choices=("csv", "json"), default="csv")
    disc.add_argument("--out", help="output path (default stdout)")
    disc.set_defaults(func=cmd_discrepancy)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=SUITES)
    verify.add_argument("--trials", type=int, default=100, help="domination sweep size")
    verify.add_argument("--seed", type=int, default=1, help="sweep seed")
    verify.add_argument("--budget", type=int, help="index enumeration budget")
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"etkbound: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, BudgetExceededError, CapExceededError) as exc:
        print(f"etkbound: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
