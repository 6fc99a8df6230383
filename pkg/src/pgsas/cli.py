"""``pgsas`` command line: generate, verify and bench.

Exit codes: 0 success / complete coverage, 1 runtime or coverage failure,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import replace
from typing import Optional, Sequence

from .bench import DEFAULT_TIME_CAP, SUITES, BenchmarkFailure, render_table, run_suite, select_suite, table_document
from .gsa import GsaParams
from .strategy import generate_suite
from .sut import ConfigError, parse_config
from .validation import SuiteFormatError, format_suite, parse_suite_text
from .verify import verify_coverage

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("pgsas")


def _default_seed() -> int:
    raw = os.environ.get("PGSAS_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"PGSAS_SEED must be an integer, got {raw!r}") from None


def _add_gsa_options(p: argparse.ArgumentParser) -> None:
    d = GsaParams()
    g = p.add_argument_group("search parameters")
    g.add_argument("--population", type=int, default=d.population_size, help="objects per population N (default: %(default)s)")
    g.add_argument("--iterations", type=int, default=d.max_iterations, help="iterations per cycle T (default: %(default)s)")
    g.add_argument("--g0", type=float, default=d.g0, help="initial gravitational constant (default: %(default)s)")
    g.add_argument("--alpha", type=float, default=d.alpha, help="gravity attenuation factor (default: %(default)s)")
    g.add_argument("--epsilon", type=float, default=d.epsilon, help="distance softening constant (default: %(default)s)")
    g.add_argument(
        "--distance",
        choices=("position", "mass"),
        default=d.distance,
        help="R_ij as position distance or mass difference (default: %(default)s)",
    )


def _params(args) -> GsaParams:
    return GsaParams(
        population_size=args.population,
        g0=args.g0,
        alpha=args.alpha,
        epsilon=args.epsilon,
        max_iterations=args.iterations,
        distance=args.distance,
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _label_rows(rows, names: list[list[str]]) -> list[list[str]]:
    return [[names[d][x] if d < len(names) and x < len(names[d]) else str(x) for d, x in enumerate(r)] for r in rows]


def cmd_generate(args) -> int:
    config = parse_config(args.config)
    params = _params(args)
    seed = args.seed if args.seed is not None else _default_seed()
    best = None
    sizes = []
    for r in range(args.runs):
        report = generate_suite(config, params, seed + r, trace=args.trace is not None)
        sizes.append(report.size)
        if best is None or report.size < best.size:
            best = report
    check = verify_coverage(best.suite, config)

    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(best.trace_csv())
    if args.output == "structured":
        doc = best.to_dict(include_timing=args.timing)
        doc["runs"] = args.runs
        doc["run_sizes"] = sizes
        doc["coverage"] = check.to_dict()
        _emit(_dump(doc), args.out)
    else:
        rows = best.suite.as_rows()
        if args.names:
            with open(args.names) as fh:
                rows = _label_rows(rows, json.load(fh))
        _emit(format_suite(rows), args.out)

    status = "complete" if check.complete else f"INCOMPLETE ({len(check.missing)} tuples missing)"
    print(
        f"size {best.size} (seed {best.seed}, best of {args.runs}), coverage {check.percentage:.1f}% {status}",
        file=sys.stderr,
    )
    return EXIT_OK if check.complete else EXIT_FAIL


def cmd_verify(args) -> int:
    config = parse_config(args.config)
    if args.suite == "-":
        text = sys.stdin.read()
    else:
        with open(args.suite) as fh:
            text = fh.read()
    rows = parse_suite_text(text, config)
    report = verify_coverage(rows, config)
    if args.output == "structured":
        doc = {"schema_version": 1, "kind": "coverage", "config": args.config, "cases": len(rows)}
        doc.update(report.to_dict())
        _emit(_dump(doc), args.out)
    else:
        lines = [
            f"cases: {len(rows)}",
            f"covered: {report.covered}/{report.total} ({report.percentage:.1f}%)",
            f"complete: {'yes' if report.complete else 'no'}",
        ]
        if report.missing:
            lines.append(f"missing ({len(report.missing)}), as i,j,a,b:")
            lines += [f"  {i},{j},{a},{b}" for i, j, a, b in report.missing]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.complete else EXIT_FAIL


def cmd_bench(args) -> int:
    specs = select_suite(args.suite)
    if args.runs is not None:
        specs = [replace(s, runs=args.runs) for s in specs]
    if args.only:
        wanted = set(args.only.split(","))
        specs = [s for s in specs if s.name in wanted or s.config in wanted]
    params = _params(args)
    seed_base = args.seed_base if args.seed_base is not None else _default_seed()
    try:
        records = run_suite(specs, params, seed_base, jobs=args.jobs, time_cap=args.time_cap)
    except BenchmarkFailure as exc:
        print(f"pgsas bench: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.output == "structured":
        _emit(_dump(table_document(records, params, seed_base, include_timing=args.timing)), args.out)
    else:
        _emit(render_table(records, include_timing=args.timing), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgsas",
        description="Pairwise covering arrays via gravitational search.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a pairwise test suite")
    g.add_argument("--config", required=True, help='parameter cardinalities, e.g. "3^4 2^2"')
    g.add_argument("--seed", type=int, default=None, help="seed of the first run (default: $PGSAS_SEED or 0)")
    g.add_argument("--runs", type=int, default=1, help="seeded runs; the smallest suite is kept (default: %(default)s)")
    g.add_argument("--output", choices=("plain", "structured"), default="plain")
    g.add_argument("--out", help="write the suite/report here instead of stdout")
    g.add_argument("--names", help="JSON list of per-parameter value names for plain output")
    g.add_argument("--trace", help="write per-iteration CSV trace of the best run here")
    g.add_argument("--timing", action="store_true", help="include wall-clock durations in structured output")
    _add_gsa_options(g)
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check pairwise coverage of a suite file")
    v.add_argument("--config", required=True)
    v.add_argument("--suite", required=True, help="suite file, one case per line ('-' for stdin)")
    v.add_argument("--output", choices=("plain", "structured"), default="plain")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="best-of-N comparison against published sizes")
    b.add_argument("--suite", choices=SUITES, default="quick")
    b.add_argument("--seed-base", type=int, default=None, help="seed of run 0 (default: $PGSAS_SEED or 0)")
    b.add_argument("--jobs", type=int, default=1, help="parallel runs (default: %(default)s)")
    b.add_argument("--runs", type=int, default=None, help="override runs per benchmark (default: 30)")
    b.add_argument("--only", help="comma-separated benchmark names or configs to keep")
    b.add_argument("--time-cap", type=float, default=DEFAULT_TIME_CAP, help="per-run wall-clock cap in seconds (default: %(default)s)")
    b.add_argument("--output", choices=("plain", "structured"), default="plain")
    b.add_argument("--out")
    b.add_argument("--no-timing", dest="timing", action="store_false", help="omit run times for byte-stable output")
    _add_gsa_options(b)
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        if getattr(args, "runs", None) is not None and args.runs < 1:
            raise ValueError("--runs must be >= 1")
        return args.func(args)
    except (ConfigError, SuiteFormatError) as exc:
        print(f"pgsas {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # bad numeric parameters land here via GsaParams validation
        print(f"pgsas {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"pgsas {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        log.debug("internal failure", exc_info=True)
        print(f"pgsas {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
