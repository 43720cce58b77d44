"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 inadmissible v,
3 search budget exhausted without a result, 64 usage error,
65 bad input data, 66 I/O failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
from pathlib import Path

from . import __version__
from .arrays import (
    family_circulants,
    goethals_seidel,
    is_hadamard,
    is_skew_type,
    is_symmetric_matrix,
    propus,
    propus_order,
)
from .catalog import VerificationReport, catalog_records, verify_catalog, verify_family
from .core import InvalidInputError
from .formats import FormatError, read_families, read_family, write_family, write_matrix_pbm, write_matrix_text
from .params import PropusParameterSet, enumerate_even_sets, enumerate_propus_sets, even_v_admissible
from .search import GolaySearch, PropusSearch, SearchConfig

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INADMISSIBLE = 2
EXIT_EXHAUSTED = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_IO = 66

ENV_CROWN_M = "PROPUS_CROWN_M"
ENV_CAPACITY = "PROPUS_CAPACITY"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_duration(text: str) -> float:
    m = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*(ms|s|m|h)?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad duration {text!r} (e.g. 30s, 2m, 1.5)")
    scale = {"ms": 1e-3, "s": 1, "m": 60, "h": 3600, None: 1}[m.group(2)]
    return float(m.group(1)) * scale


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name} must be an integer") from None


def _log(event: dict):
    sys.stderr.write(json.dumps(event, sort_keys=True) + "\n")
    sys.stderr.flush()


def _add_search_flags(p: argparse.ArgumentParser, budget_default: str):
    p.add_argument("--seed", type=int, help="RNG seed; drawn and printed when omitted")
    p.add_argument("--crown-m", type=int, help=f"crown exponent m, M = 2^m branches (env {ENV_CROWN_M}, default 8)")
    p.add_argument("--capacity", type=_positive_int, help=f"leaves per branch side w (env {ENV_CAPACITY}, default 1024)")
    p.add_argument("--batch-size", type=_positive_int, default=256)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--sign-mode", choices=("binary", "ternary"), default="ternary")
    p.add_argument("--max-candidates", type=_positive_int)
    p.add_argument("--time-budget", type=parse_duration,
                   help=f"wall-clock budget, e.g. 30s (default {budget_default} if no candidate budget)")
    p.add_argument("--quiet", action="store_true", help="suppress the progress log on stderr")


def _config(args, budget_default: float, **extra) -> SearchConfig:
    time_budget = args.time_budget
    if time_budget is None and args.max_candidates is None:
        time_budget = budget_default
    crown_m = args.crown_m if args.crown_m is not None else _env_int(ENV_CROWN_M, 8)
    capacity = args.capacity if args.capacity is not None else _env_int(ENV_CAPACITY, 1024)
    try:
        cfg = SearchConfig(
            seed=args.seed, crown_m=crown_m, capacity=capacity, batch_size=args.batch_size,
            max_candidates=args.max_candidates, time_budget=time_budget, workers=args.workers,
            sign_mode=args.sign_mode, **extra,
        )
    except InvalidInputError as exc:
        raise UsageError(str(exc)) from None
    if args.seed is None:
        sys.stderr.write(f"seed={cfg.seed}\n")
    return cfg


def _summary(stats) -> str:
    return (f"candidates={stats.candidates} sequences={stats.sequences} "
            f"collisions={stats.comparisons} matches={stats.key_matches} found={stats.emitted}")


# ---------------------------------------------------------------------------
# subcommands

def cmd_params(args) -> int:
    v = args.v
    if v < 2:
        raise UsageError("v must be at least 2")
    if v % 2 == 0:
        if not args.even_ok:
            raise UsageError("even v requires --even-ok")
        if not even_v_admissible(v):
            print(f"inadmissible: v = 2^{{2k+1}}(8m+7) for v={v}")
            return EXIT_INADMISSIBLE
        sets = enumerate_even_sets(v)
    else:
        sets = enumerate_propus_sets(v)
    table = {}
    if args.annotate:
        from .catalog import load_parameter_table

        table = load_parameter_table()
    for ps in sets:
        symbols = ",".join(table.get(ps, ()))
        print(f"{ps} {symbols}".rstrip())
    return EXIT_OK


def _family_name(family) -> str:
    digest = hashlib.sha256(family.canonical().encode()).hexdigest()[:12]
    return f"family_{family.v}_{digest}.txt"


def cmd_search(args) -> int:
    try:
        params = PropusParameterSet.parse(args.paramset)
    except InvalidInputError as exc:
        raise UsageError(str(exc)) from None
    limit = None if args.max_families == 0 else args.max_families
    cfg = _config(args, 60.0, symmetric_slot=args.slot, max_results=limit)
    try:
        engine = PropusSearch(params, cfg, progress=None if args.quiet else _log)
    except InvalidInputError as exc:
        raise UsageError(str(exc)) from None
    out_dir = Path(args.emit_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"cannot create {out_dir}: {exc}", file=sys.stderr)
        return EXIT_IO
    found = 0
    for family in engine.families():
        path = out_dir / _family_name(family)
        meta = {"source": [f"search seed={cfg.seed}"], "slot": [family.symmetric_slots()]}
        try:
            path.write_text(write_family(family, meta), encoding="utf-8")
        except OSError as exc:
            print(f"cannot write {path}: {exc}", file=sys.stderr)
            return EXIT_IO
        print(path)
        found += 1
    print(_summary(engine.stats))
    return EXIT_OK if found else EXIT_EXHAUSTED


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def cmd_build(args) -> int:
    try:
        text = _read_text(args.family)
    except OSError as exc:
        print(f"cannot read {args.family}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        family = read_family(text).family
        if args.array == "propus":
            h = propus(*propus_order(family))
        else:
            h = goethals_seidel(*family_circulants(family))
    except InvalidInputError as exc:
        print(f"invalid family: {exc}", file=sys.stderr)
        return EXIT_DATA
    rendered = write_matrix_pbm(h) if args.format == "pbm" else write_matrix_text(h)
    hadamard = is_hadamard(h)
    verdict = (f"hadamard: {'yes' if hadamard else 'no'}, "
               f"symmetric: {'yes' if is_symmetric_matrix(h) else 'no'}, "
               f"skew-type: {'yes' if is_skew_type(h) else 'no'}")
    if args.out:
        try:
            Path(args.out).write_text(rendered, encoding="utf-8")
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
        print(verdict)
    else:
        sys.stdout.write(rendered)
        print(verdict, file=sys.stderr)
    return EXIT_OK if hadamard else EXIT_VERIFY


def _print_reports(reports: list[VerificationReport]) -> int:
    for report in reports:
        for line in report.lines():
            print(line)
    passed = sum(r.ok for r in reports)
    print(f"{passed}/{len(reports)} families pass")
    return EXIT_OK if passed == len(reports) else EXIT_VERIFY


def cmd_verify(args) -> int:
    if args.catalog == bool(args.path):
        raise UsageError("give either a family file or --catalog")
    if args.catalog:
        return _print_reports(verify_catalog())
    try:
        text = _read_text(args.path)
    except OSError as exc:
        print(f"cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        records = read_families(text)
    except InvalidInputError as exc:
        print(f"invalid family file: {exc}", file=sys.stderr)
        return EXIT_DATA
    if not records:
        print("no family found in file", file=sys.stderr)
        return EXIT_DATA
    reports = [verify_family(r.family, r.get("slot", ""), r.get("source", args.path)) for r in records]
    return _print_reports(reports)


def cmd_golay(args) -> int:
    if args.v % 2 or args.v < 2:
        raise UsageError("periodic Golay pairs exist only for even v")
    limit = None if args.max_pairs == 0 else args.max_pairs
    cfg = _config(args, 30.0, max_results=limit)
    try:
        engine = GolaySearch(args.v, args.k1, args.k2, cfg, args.variant,
                             progress=None if args.quiet else _log)
    except InvalidInputError as exc:
        raise UsageError(str(exc)) from None
    found = 0
    for a, b in engine.pairs():
        print(f"{a} / {b}")
        found += 1
    print(_summary(engine.stats))
    return EXIT_OK if found else EXIT_EXHAUSTED


def cmd_export_catalog(args) -> int:
    out_dir = Path(args.dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for record in catalog_records():
            path = out_dir / f"{record.get('source')}.txt"
            path.write_text(write_family(record.family, record.meta), encoding="utf-8")
    except OSError as exc:
        print(f"cannot export to {out_dir}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(catalog_records())} family files to {out_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="propus", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("params", help="list propus parameter sets for v")
    p.add_argument("v", type=int)
    p.add_argument("--even-ok", action="store_true", help="allow even v (checks admissibility)")
    p.add_argument("--annotate", action="store_true", help="append known existence annotations")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("search", help="randomized search for propus families")
    p.add_argument("paramset", help='parameter set, e.g. "(9;3,3,3,3;3)"')
    p.add_argument("--slot", choices=("A", "D"), default="A", help="block forced to be symmetric")
    p.add_argument("--emit-dir", default="families", help="directory for found family files")
    p.add_argument("--max-families", type=int, default=1, help="stop after this many (0 = until budget)")
    _add_search_flags(p, "60s")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("build", help="assemble and check the matrix of a family file")
    p.add_argument("family")
    p.add_argument("--format", choices=("text", "pbm"), default="text")
    p.add_argument("--array", choices=("gs", "propus"), default="propus")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="verify a family file or the bundled catalog")
    p.add_argument("path", nargs="?")
    p.add_argument("--catalog", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("golay", help="randomized search for periodic Golay pairs")
    p.add_argument("v", type=int)
    p.add_argument("k1", type=int)
    p.add_argument("k2", type=int)
    p.add_argument("--variant", choices=("brute", "table", "tree"), default="tree")
    p.add_argument("--max-pairs", type=int, default=1, help="stop after this many (0 = until budget)")
    _add_search_flags(p, "30s")
    p.set_defaults(func=cmd_golay)

    p = sub.add_parser("export-catalog", help="write the bundled families as family files")
    p.add_argument("dir")
    p.set_defaults(func=cmd_export_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"propus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as exc:
        print(f"propus: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
