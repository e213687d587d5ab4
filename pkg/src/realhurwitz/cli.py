"""Command-line surface.

Subcommands: hurwitz, solve, s-number, real-hurwitz, verify, series.
JSON is the canonical output format; text and csv renderings are derived
from the same payload.  Every artifact embeds the active configuration.

Exit codes: 0 success, 2 validation error, 3 infrastructure limit
(budgets, scale, tolerance trouble), 4 property or consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import RunConfig, load_config
from .coverings import real_hurwitz
from .errors import (
    AmbiguousRealness,
    ClusterAmbiguity,
    CoveringAssemblyError,
    DegenerateConfiguration,
    EnumerationBudgetExceeded,
    IncompleteEnumeration,
    OvercountDetected,
    ScaleExceeded,
    SignMismatch,
    ValidationError,
)
from .partitions import parse_partition, parse_profiles, parse_values, validate_branch_spec
from .polysolve import classify_real, solve_all
from .series import basis_fit, series_table
from .verify import run_sweep

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INFRA = 3
EXIT_PROPERTY = 4

_INFRA = (
    IncompleteEnumeration,
    EnumerationBudgetExceeded,
    ScaleExceeded,
    AmbiguousRealness,
    OvercountDetected,
    DegenerateConfiguration,
    ClusterAmbiguity,
)
_PROPERTY = (SignMismatch, CoveringAssemblyError)


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--seed", type=int, default=None, help="RNG seed (default 0)")
    parser.add_argument("--budget", type=int, default=None,
                        help="multistart budget; enumeration cap for `hurwitz`")
    parser.add_argument("--workers", type=int, default=None, help="parallel workers")
    parser.add_argument("--tol-residual", type=float, default=None)
    parser.add_argument("--tol-dedup", type=float, default=None)
    parser.add_argument("--tol-real", type=float, default=None)
    parser.add_argument("--tol-cluster", type=float, default=None)
    parser.add_argument("--cache", type=str, default=None, help="solution cache file (JSONL)")
    parser.add_argument("--config", type=str, default=None,
                        help="JSON config file (default: $REALHURWITZ_CONFIG)")
    parser.add_argument("--format", dest="output_format", choices=("json", "text", "csv"),
                        default=None, help="output format (default json)")
    parser.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realhurwitz",
        description="Signed counts of real polynomial branched coverings, "
        "with certified complex solution sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hurwitz", help="exact complex count by factorization enumeration")
    p.add_argument("--profiles", required=True, help='pipe-separated partitions, e.g. "2,1|2,1"')
    _add_common(p)

    p = sub.add_parser("solve", help="all normalized complex polynomials for a spec")
    p.add_argument("--profiles", required=True)
    p.add_argument("--values", default=None,
                   help='branch values (default 1..k); write --values=-2,2 for a leading minus')
    _add_common(p)

    p = sub.add_parser("s-number", help="signed count of real normalized polynomials")
    p.add_argument("--profiles", required=True)
    p.add_argument("--values", default=None)
    _add_common(p)

    p = sub.add_parser("real-hurwitz", help="signed count of real covering classes")
    p.add_argument("--profiles", required=True)
    p.add_argument("--values", default=None)
    p.add_argument("--diagnostics", action="store_true",
                   help="build classes even in the parity-odd branch")
    _add_common(p)

    p = sub.add_parser("verify", help="property sweep over all specs up to bounds")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--debug-corrupt-signs", action="store_true",
                   help="negative control: corrupt one sign and expect failures")
    _add_common(p)

    p = sub.add_parser("series", help="one-part value table and basis fit")
    p.add_argument("--lambda", dest="lam", required=True, help='partition, e.g. "3,1"')
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--fit", type=int, default=None, help="basis degree bound for the fit")
    p.add_argument("--max-degree", type=int, default=None, help="table degree bound")
    _add_common(p)

    return parser


def _config_from_args(args) -> RunConfig:
    overrides = {
        "seed": args.seed,
        "workers": args.workers,
        "tol_residual": args.tol_residual,
        "tol_dedup": args.tol_dedup,
        "tol_real": args.tol_real,
        "tol_cluster": args.tol_cluster,
        "cache": args.cache,
        "output_format": args.output_format,
        "verbosity": args.verbose or None,
    }
    if args.budget is not None:
        if args.command == "hurwitz":
            overrides["enum_budget"] = args.budget
        else:
            overrides["start_budget"] = args.budget
    if getattr(args, "max_degree", None) is not None:
        overrides["max_degree"] = args.max_degree
    if getattr(args, "debug_corrupt_signs", False):
        overrides["debug_corrupt_signs"] = True
    if getattr(args, "diagnostics", False):
        overrides["force_class_diagnostics"] = True
    return load_config(args.config, **overrides)


def _spec_from_args(args):
    profiles = parse_profiles(args.profiles)
    values = parse_values(args.values) if getattr(args, "values", None) else None
    return validate_branch_spec(profiles, values)


def _emit(payload: dict, config: RunConfig):
    fmt = config.output_format
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    elif fmt == "text":
        for line in _render_text(payload):
            print(line)
    else:
        for line in _render_csv(payload):
            print(line)


def _render_text(payload: dict, prefix: str = "") -> list[str]:
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            lines.append(f"{prefix}{key}:")
            lines.extend(_render_text(value, prefix + "  "))
        elif isinstance(value, list):
            lines.append(f"{prefix}{key}: {json.dumps(value, sort_keys=True)}")
        else:
            lines.append(f"{prefix}{key}: {value}")
    return lines


def _render_csv(payload: dict) -> list[str]:
    result = payload.get("result", {})
    if "entries" in result:
        lines = ["m,h,degree,degree_parity"]
        for row in result["entries"]:
            lines.append(f"{row['m']},{row['h']},{row['degree']},{row['degree_parity']}")
        return lines
    if "records" in result:
        lines = ["key,status,N,s,HR"]
        for rec in result["records"]:
            lines.append(
                f"\"{rec['key']}\",{rec['status']},{rec['N']},{rec.get('s', '')},{rec.get('HR', '')}"
            )
        return lines
    return [json.dumps(payload, sort_keys=True)]


def _payload(command: str, config: RunConfig, result: dict) -> dict:
    return {"command": command, "config": config.as_json_dict(), "result": result}


def _cmd_hurwitz(args, config: RunConfig) -> int:
    from .factorizations import count_factorizations

    profiles = parse_profiles(args.profiles)
    count = count_factorizations(
        profiles, enum_budget=config.enum_budget, workers=config.workers
    )
    _emit(_payload("hurwitz", config, count.as_json_dict()), config)
    return EXIT_OK


def _cmd_solve(args, config: RunConfig) -> int:
    spec = _spec_from_args(args)
    solset = solve_all(spec, config, cache_path=config.cache)
    _emit(_payload("solve", config, solset.as_json_dict()), config)
    return EXIT_OK


def _cmd_s_number(args, config: RunConfig) -> int:
    spec = _spec_from_args(args)
    solset = solve_all(spec, config, cache_path=config.cache)
    reals = classify_real(solset, config)
    result = {
        "spec": spec.as_json_dict(),
        "s": sum(p.sign for p in reals),
        "real_polynomials": [p.as_json_dict() for p in reals],
    }
    _emit(_payload("s-number", config, result), config)
    return EXIT_OK


def _cmd_real_hurwitz(args, config: RunConfig) -> int:
    spec = _spec_from_args(args)
    result = real_hurwitz(spec, config)
    _emit(_payload("real-hurwitz", config, result.as_json_dict()), config)
    return EXIT_OK


def _cmd_verify(args, config: RunConfig) -> int:
    report = run_sweep(args.dmax, args.kmax, config)
    _emit(_payload("verify", config, report.as_json_dict()), config)
    if not report.passed:
        return EXIT_PROPERTY if any(r.status == "FAIL" for r in report.records) else EXIT_INFRA
    return EXIT_OK


def _cmd_series(args, config: RunConfig) -> int:
    lam = parse_partition(args.lam)
    table = series_table(lam, args.mmax, config)
    result = table.as_json_dict()
    if args.fit is not None:
        fits = {}
        for parity in ("even", "odd"):
            if len(table.parity_entries(parity)) >= 2:
                fits[parity] = basis_fit(table, parity, args.fit).as_json_dict()
        result["fit"] = fits
    _emit(_payload("series", config, result), config)
    return EXIT_OK


_COMMANDS = {
    "hurwitz": _cmd_hurwitz,
    "solve": _cmd_solve,
    "s-number": _cmd_s_number,
    "real-hurwitz": _cmd_real_hurwitz,
    "verify": _cmd_verify,
    "series": _cmd_series,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return _COMMANDS[args.command](args, config)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except _INFRA as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INFRA
    except _PROPERTY as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PROPERTY


if __name__ == "__main__":
    raise SystemExit(main())
