"""Command line interface: ``lrfuzzy {gen,converge,plot-data,validate}``.

Exit status is 0 on success, 1 on a usage or input error and 2 when
``validate`` finds invalid records.  The default seed (used when neither the
spec file nor ``--seed`` sets one) comes from ``LRFUZZY_SEED`` if defined.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .archive import (
    ArchiveError,
    dump_archive,
    load_archive,
    membership_polyline,
    polylines_csv,
    report_csv,
    report_json,
    write_atomic,
)
from .diagnostics import DEFAULT_GRID, convergence_study
from .fuzzy import validate
from .simulate import MODES, InjectedDraws, gen_sample
from .specfile import SpecParseError, parse_spec_file

SEED_ENV = "LRFUZZY_SEED"
EXIT_OK, EXIT_USAGE, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        seed = int(raw, 0)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None
    if not 0 <= seed < 2**64:
        raise UsageError(f"{SEED_ENV}={raw!r} is not a 64-bit unsigned integer")
    return seed


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        try:
            write_atomic(out, text)
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc.strerror}") from None


def _load_spec(path: str, args):
    try:
        doc = parse_spec_file(_read(path), default_seed=_default_seed())
    except SpecParseError as exc:
        raise UsageError(f"{path}: {exc}") from None
    spec = doc.spec
    overrides = {}
    if getattr(args, "k", None) is not None:
        overrides["k"] = args.k
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    try:
        spec = dataclasses.replace(spec, **overrides)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return dataclasses.replace(doc, spec=spec)


def _load_draws(path: str) -> list[InjectedDraws]:
    try:
        raw = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON: {exc}") from None
    items = raw if isinstance(raw, list) else [raw]
    fields = {f.name for f in dataclasses.fields(InjectedDraws)}
    out = []
    for i, item in enumerate(items):
        if not isinstance(item, dict):
            raise UsageError(f"{path}: draw set {i} is not an object")
        unknown = set(item) - fields
        if unknown:
            raise UsageError(f"{path}: draw set {i} has unknown keys {sorted(unknown)}")
        try:
            out.append(InjectedDraws(**item))
        except TypeError as exc:
            raise UsageError(f"{path}: draw set {i}: {exc}") from None
    return out


def _k_list(text: str) -> list[int]:
    try:
        ks = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid k list {text!r}") from None
    if not ks or any(k < 0 for k in ks):
        raise argparse.ArgumentTypeError(f"k list must hold nonnegative integers: {text!r}")
    return ks


def _nonneg(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return v


def cmd_gen(args) -> int:
    doc = _load_spec(args.spec, args)
    if args.mode is not None:
        doc = dataclasses.replace(doc, mode=args.mode)
    n = doc.n if args.n is None else args.n
    draws = None
    if args.draws is not None:
        draws = _load_draws(args.draws)
        if args.n is not None and args.n != len(draws):
            raise UsageError(f"--n {args.n} disagrees with {len(draws)} injected draw sets")
        n = len(draws)
    try:
        sample = gen_sample(doc.spec, n, doc.mode, workers=args.workers, draws=draws)
    except ValueError as exc:
        raise UsageError(f"{args.spec}: {exc}") from None
    doc = dataclasses.replace(doc, n=n)
    if args.format == "json":
        _emit(dump_archive(doc, sample), args.out)
    else:
        _emit(polylines_csv([membership_polyline(f, args.points) for f in sample]), args.out)
    return EXIT_OK


def cmd_converge(args) -> int:
    doc = _load_spec(args.spec, args)
    report = convergence_study(
        doc.spec, args.k_list, args.reps, args.grid, workers=args.workers
    )
    expected = len(args.k_list) * args.reps
    if len(report.sup_distances) != expected:
        raise RuntimeError(
            f"malformed report: {len(report.sup_distances)} rows, expected {expected}"
        )
    text = report_json(report) if args.format == "json" else report_csv(report)
    _emit(text, args.out)
    return EXIT_OK


def _load_archive(path):
    try:
        return load_archive(_read(path))
    except ArchiveError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_plot_data(args) -> int:
    header, records = _load_archive(args.archive)
    indices = range(len(records))
    if args.element is not None:
        if not 0 <= args.element < len(records):
            raise UsageError(
                f"{args.archive}: element {args.element} out of range (n = {len(records)})"
            )
        indices = [args.element]
    polys = [membership_polyline(records[i], args.points) for i in indices]
    if args.format == "csv":
        text = polylines_csv(polys, element_column=args.element is None)
    else:
        body = {
            "mode": header.get("mode"),
            "elements": [
                {"index": i, "vertices": p.tolist()} for i, p in zip(indices, polys)
            ],
        }
        text = json.dumps(body, indent=1) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    header, records = _load_archive(args.archive)
    problems = []
    if header.get("n") != len(records):
        problems.append(f"header n = {header.get('n')!r} but {len(records)} records")
    for i, rec in enumerate(records):
        problems.extend(f"record {i}: {p}" for p in validate(rec))
        if header.get("mode") == "piecewise" and rec.k != header.get("k"):
            problems.append(f"record {i}: k = {rec.k}, header k = {header.get('k')}")
    for p in problems:
        print(f"{args.archive}: {p}", file=sys.stderr)
    if problems:
        return EXIT_INVALID
    print(f"{args.archive}: {len(records)} records valid")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lrfuzzy", description="Simulate random LR fuzzy intervals.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a fuzzy random sample")
    g.add_argument("spec", help="model spec file ('-' for stdin)")
    g.add_argument("--n", type=_nonneg, help="sample size (overrides the spec file)")
    g.add_argument("--mode", choices=MODES)
    g.add_argument("--k", type=_nonneg, help="knots per arm for piecewise mode")
    g.add_argument("--seed", type=_nonneg)
    g.add_argument("--out", help="output path (default stdout)")
    g.add_argument("--format", choices=("json", "csv"), default="json",
                   help="json archive or csv polylines (element,x,mu)")
    g.add_argument("--points", type=int, default=64, help="samples per arm in csv limit polylines")
    g.add_argument("--workers", type=int, default=1)
    g.add_argument("--draws", help="JSON file of injected draws replacing the RNG")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("converge", help="sup-distance between k-knot and limit intervals")
    c.add_argument("spec")
    c.add_argument("--k-list", type=_k_list, default=[4, 16, 64, 256])
    c.add_argument("--reps", type=_nonneg, default=100)
    c.add_argument("--grid", type=int, default=DEFAULT_GRID)
    c.add_argument("--seed", type=_nonneg)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--out")
    c.set_defaults(func=cmd_converge)

    d = sub.add_parser("plot-data", help="membership polylines for an archive")
    d.add_argument("archive")
    d.add_argument("--points", type=int, default=64)
    d.add_argument("--element", type=_nonneg, help="emit only this element (csv header x,mu)")
    d.add_argument("--format", choices=("csv", "json"), default="csv")
    d.add_argument("--out")
    d.set_defaults(func=cmd_plot_data)

    v = sub.add_parser("validate", help="check every record of an archive")
    v.add_argument("archive")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "grid", 2) < 2 or getattr(args, "points", 2) < 2:
            raise UsageError("--grid and --points must be at least 2")
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be at least 1")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
