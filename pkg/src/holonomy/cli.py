"""Command-line interface: analyze a candidate, verify or list the catalog.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or recipe errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import yaml

from .catalog import (
    AnalysisError,
    CatalogEntry,
    EntryResult,
    RecipeError,
    analyze,
    build_recipe,
    check_entry,
    load_catalog,
    select,
    verify_entry,
)
from .representations import RepresentationError, sl2_irrep

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

_SL2_TARGET = re.compile(r"sl2-V(\d+)$")


class UsageError(Exception):
    pass


def _fmt_tuple(xs) -> str:
    return "(" + ",".join(str(x) for x in xs) + ")"


def resolve_target(target: str, force: bool = False):
    """Return (representation, catalog entry or None) for an id, a recipe file or sl2-V<k>."""
    entries = load_catalog()
    for e in entries:
        if e.id == target:
            if e.tier == "declared" and not force:
                raise UsageError(f"{target}: declared entry; pass --force to analyze it anyway")
            return e.build(override=force), e
    path = Path(target)
    if path.is_file():
        try:
            data = yaml.safe_load(path.read_text(encoding="utf-8"))
        except yaml.YAMLError as err:
            raise RecipeError(f"{target}: not parseable as YAML/JSON: {err}") from err
        if isinstance(data, dict) and "recipe" in data:
            data = data["recipe"]
        return build_recipe(data), None
    m = _SL2_TARGET.match(target)
    if m:
        try:
            return sl2_irrep(int(m.group(1))), None
        except RepresentationError as err:
            raise RecipeError(f"{target}: {err}") from err
    raise UsageError(f"{target}: not a catalog id, a recipe file or sl2-V<k>")


def format_report(report, name: str = "") -> str:
    d = report.details
    lines = []
    if name:
        lines.append(name)
    lines.append(f"dim_m={report.dim_m} dim_h={report.dim_h}")
    lines.append(f"dim_h1={report.dim_h1} dim_torsion_coker={report.dim_torsion_coker}")
    lines.append(
        f"dim_K={report.dim_K} dim_K1={report.dim_K1} dim_K2={report.dim_K2} characters={_fmt_tuple(report.characters)}"
    )
    cert = d.get("involutivity_certificate")
    lines.append(f"involutive={report.involutive}" + (f" [{cert}]" if cert else ""))
    lines.append(f"berger1={report.berger1} berger2={report.berger2} absorbable={report.absorbable}")
    if "curvature_span_dim" in d:
        lines.append(
            f"curvature span dim={d['curvature_span_dim']}; Q unique modulo K^2-valued terms (dim {d['q_unique_modulo_dim']})"
        )
    gen = "none" if report.generality is None else f"{report.generality[0]} functions of {report.generality[1]} variables"
    lines.append(f"generality={gen}")
    lines.append(f"commutant_dim={report.commutant_dim} invariant_vectors_dim={report.invariant_vectors_dim}")
    cc = report.complex_counts()
    if cc is not None:
        parts = [f"{k}={v}" for k, v in cc.items() if k != "generality"]
        if "generality" in cc:
            parts.append(f"generality={cc['generality'][0]} of {cc['generality'][1]}")
        lines.append("complex counts: " + " ".join(parts))
    lines.append(f"seed={report.seed}")
    if report.timing:
        lines.append("timing: " + " ".join(f"{k}={v}s" for k, v in report.timing.items()))
    return "\n".join(lines)


def _format_check(c) -> str:
    mark = "ok  " if c.passed else "FAIL"
    return f"  {mark} {c.field}: expected {c.expected!r}, got {c.got!r}  [{c.cite}]"


def cmd_analyze(args) -> int:
    rep, entry = resolve_target(args.target, force=args.force)
    report = analyze(rep, seed=args.seed, trials=args.trials, timing=args.timing)
    if args.json:
        print(report.to_json())
        return EXIT_OK
    print(format_report(report, f"{args.target}: {rep.name}" if rep.name else args.target))
    if entry is not None and (entry.expected or entry.derived):
        print("catalog comparison:")
        checks = check_entry(entry, report)
        for c in checks:
            print(_format_check(c))
    return EXIT_OK


def _print_result(r: EntryResult) -> None:
    if r.status == "declared":
        print(f"skip {r.entry.id}: declared, not verified")
    elif r.status == "verified":
        print(f"ok   {r.entry.id} ({len(r.checks)} checks, {r.seconds:.1f}s)")
    elif r.status == "error":
        print(f"ERR  {r.entry.id}: {r.error}")
    else:
        print(f"FAIL {r.entry.id}")
        for c in r.checks:
            if not c.passed:
                print(f"     {r.entry.id}.{c.field}: expected {c.expected!r} [{c.cite}], got {c.got!r}")
    sys.stdout.flush()


def cmd_verify(args) -> int:
    entries = select(load_catalog(), args.tier)
    results = []
    for e in entries:
        r = verify_entry(e, seed=args.seed, trials=args.trials)
        _print_result(r)
        results.append(r)
    counts = {s: sum(r.status == s for r in results) for s in ("verified", "failed", "error", "declared")}
    if entries and counts["declared"] == len(entries):
        print("0 entries verified (all declared)")
    else:
        print(
            f"{counts['verified']} entries verified, {counts['failed']} failed, "
            f"{counts['error']} errors, {counts['declared']} declared"
        )
    return EXIT_FAILED if counts["failed"] or counts["error"] else EXIT_OK


def _dims(e: CatalogEntry) -> tuple[str, str]:
    if e.recipe is None:
        return "-", "-"
    try:
        rep = e.build(override=True)
    except RecipeError:
        return "?", "?"
    return str(rep.n), str(rep.dim)


def cmd_catalog(args) -> int:
    entries = load_catalog()
    if args.tier:
        entries = select(entries, args.tier)
    if args.grep:
        pat = args.grep.lower()
        entries = [e for e in entries if pat in e.id.lower() or pat in e.provenance.lower()]
    print(f"{'id':<26} {'tier':<9} {'dim_m':>5} {'dim_h':>5}  provenance")
    for e in entries:
        m, h = _dims(e)
        print(f"{e.id:<26} {e.tier:<9} {m:>5} {h:>5}  {e.provenance}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holonomy", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the full analysis on one candidate")
    a.add_argument("target", help="catalog id, recipe file (YAML or JSON) or sl2-V<k>")
    a.add_argument("--json", action="store_true", help="emit one JSON document with the report fields")
    a.add_argument("--seed", type=int, default=0, help="seed for the random character flags")
    a.add_argument("--trials", type=int, default=5, help="random flags tried for the Cartan characters")
    a.add_argument("--timing", action="store_true", help="record per-stage wall-clock seconds")
    a.add_argument("--force", action="store_true", help="analyze a declared catalog entry")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="check catalog entries against their expected values")
    v.add_argument("--tier", default="core", choices=["core", "extended", "declared", "all"])
    v.add_argument("--seed", type=int, default=0, help="seed for the random character flags")
    v.add_argument("--trials", type=int, default=5)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("catalog", help="list catalog entries")
    c.add_argument("--tier", choices=["core", "extended", "declared", "all"])
    c.add_argument("--grep", help="case-insensitive filter on id and provenance")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if getattr(args, "trials", 1) < 1:
        print("error: --trials must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, RecipeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AnalysisError as e:
        print(f"analysis failed: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
