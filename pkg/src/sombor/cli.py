"""Command-line entry point: ``sombor <generate|compute|verify|bounds|table>``.

Exit status: 0 on success, 1 when a requested failure condition fires
(``--fail-on-mismatch``, or an admissible bound violation), 2 on bad input.
Errors print one line ``error[<code>]: <message>`` to stderr.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import bounds as bl
from . import closed_forms as cf
from . import fileio
from .families import CACTUS_FAMILIES, FAMILIES, FamilySpec, resolve_family
from .graph import Graph, GraphError, degree_pair_profile, make_link_spec
from .indices import IndexId, all_indices

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class CliError(GraphError):
    code = "usage"


def parse_range(text: str) -> list[int]:
    """``"5"``, ``"2..30"`` or ``"3,5,7"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise CliError(f"empty range {text!r}")
            return list(range(lo_i, hi_i + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CliError(f"bad integer range {text!r}") from None


def _spec_from_args(family: str, n: int | None, m: int | None) -> FamilySpec:
    fam = FAMILIES[resolve_family(family)]
    given = {"n": n, "m": m}
    params = {p: given[p] for p in fam.params if given[p] is not None}
    return FamilySpec(fam.name, params)


def _parse_monomer(text: str) -> Graph:
    """``FAMILY[:k=v[,k=v]]`` or ``@PATH`` for an edge-list file."""
    if text.startswith("@"):
        return fileio.read_graph(text[1:])
    name, _, rest = text.partition(":")
    params = {}
    for kv in filter(None, rest.split(",")):
        k, _, v = kv.partition("=")
        try:
            params[k.strip()] = int(v)
        except ValueError:
            raise CliError(f"bad monomer parameter {kv!r}") from None
    return FamilySpec(name, params).generate()


def _load_graph(args) -> tuple[Graph, str]:
    if getattr(args, "input", None):
        return fileio.read_graph(args.input), args.input
    if not getattr(args, "family", None):
        raise CliError("give --family (with --n/--m) or --input")
    spec = _spec_from_args(args.family, args.n, args.m)
    return spec.generate(), spec.describe()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _info(msg: str, out: str | None) -> None:
    # keep stdout clean when it carries the report
    print(msg, file=sys.stdout if out else sys.stderr)


# --- subcommands ---------------------------------------------------------------


def cmd_generate(args) -> int:
    spec = _spec_from_args(args.family, args.n, args.m)
    g = spec.generate()
    counts = f"vertices={g.vertex_count} edges={g.edge_count}"
    if args.format == "json":
        text = fileio.graph_json(g)
    else:
        text = fileio.serialize_edge_list(g, [spec.describe(), counts])
    _emit(text, args.out)
    _info(counts, args.out)
    return EXIT_OK


def cmd_compute(args) -> int:
    g, _ = _load_graph(args)
    wanted = [s.strip() for s in args.indices.split(",") if s.strip()]
    if not wanted or any(s.lower() == "all" for s in wanted):
        ids = list(IndexId)
    else:
        ids = [IndexId.parse(s) for s in wanted]
    values = all_indices(g)
    rows = [(i.value, values[i]) for i in ids]
    if args.format == "csv":
        text = fileio.csv_text(rows, ("index", "value"))
    elif args.format == "json":
        text = fileio.to_json({k: v for k, v in rows}) + "\n"
    else:
        text = "".join(f"{k} {fileio.fmt(v)}\n" for k, v in rows)
    if args.profile:
        text += "".join(f"profile {a} {b} {c}\n" for (a, b), c in degree_pair_profile(g).items())
    _emit(text, args.out)
    return EXIT_OK


def select_cells(tokens: Sequence[str]) -> list[cf.FormulaCell]:
    chosen: list[cf.FormulaCell] = []
    for tok in tokens:
        tok = tok.strip()
        if tok == "all":
            pick = cf.catalogue()
        elif tok == "cactus":
            pick = [c for c in cf.catalogue() if c.family in CACTUS_FAMILIES]
        elif tok in cf.GROUPS:
            pick = cf.catalogue([tok])
        else:
            fam = resolve_family(tok)
            pick = [c for c in cf.catalogue() if c.family == fam]
            if not pick:
                raise CliError(f"no printed formulas for family {tok!r}")
        chosen += [c for c in pick if c not in chosen]
    order = {c.key: i for i, c in enumerate(cf.catalogue())}
    return sorted(chosen, key=lambda c: order[c.key])


def cmd_verify(args) -> int:
    cells = select_cells(args.families.split(","))
    if args.verified_only:
        keep = set(cf.VERIFIED_SUBSET)
        cells = [c for c in cells if c.key in keep]
    ranges = {}
    if args.n:
        ranges["n"] = parse_range(args.n)
    if args.m:
        ranges["m"] = parse_range(args.m)
    results = cf.sweep_verify(cells, ranges or None, args.tol)
    _emit(fileio.verify_report(results, args.format), args.out)
    summaries = cf.summarize(results)
    if args.summary:
        _emit(fileio.summary_report(summaries), args.summary)
    mismatches = sum(r.verdict == "mismatch" for r in results)
    unstable = [s for s in summaries if s.outcome == "unstable"]
    _info(
        f"cells={len(summaries)} checks={len(results)} mismatches={mismatches} "
        f"mismatching_cells={sum(s.outcome != 'match' for s in summaries)} unstable_cells={len(unstable)}",
        args.out,
    )
    if args.fail_on_mismatch and mismatches:
        return EXIT_FAIL
    return EXIT_OK


def _link_from_args(args):
    monomers = [_parse_monomer(t) for t in (args.monomer or [])]
    anchors = args.anchor or []
    return make_link_spec(monomers, anchors)


def cmd_bounds(args) -> int:
    if args.check == "fuzz":
        res = bl.fuzz_bounds(args.seed, args.count, args.n_min, args.n_max, args.workers)
        text = fileio.bound_csv(res.reports) if args.format == "csv" else fileio.bound_jsonl(res.reports)
        _emit(text, args.out)
        summary = fileio.fuzz_summary_csv(res.summary)
        if args.summary:
            _emit(summary, args.summary)
        else:
            print(summary, end="", file=sys.stdout if args.out else sys.stderr)
        # only the sandwich bounds are expected to hold universally
        return EXIT_FAIL if res.violations(bl.SANDWICHES) else EXIT_OK

    bound = bl.BoundId.parse(args.check)
    if bound in bl.LINKS:
        spec = _link_from_args(args)
        rep = bl.check_link_so1(spec, "cli", uniform=bound is bl.BoundId.LINK_SO1_UNIFORM)
    else:
        g, label = _load_graph(args)
        if bound in bl.SANDWICHES:
            rep = bl.check_sandwich(g, bound, label)
        else:
            if not args.edge:
                raise CliError(f"{bound.cli_name} needs --edge U V")
            rep = bl.check_deletion(g, args.edge, bound, label)
    text = fileio.bound_csv([rep]) if args.format == "csv" else fileio.bound_jsonl([rep])
    _emit(text, args.out)
    _info(f"{bound.cli_name}: {rep.verdict} (slack={fileio.fmt(rep.slack)}, "
          f"preconditions_met={fileio.fmt(rep.preconditions_met)})", args.out)
    return EXIT_FAIL if rep.verdict == "violated" and rep.preconditions_met else EXIT_OK


def cmd_table(args) -> int:
    n_values = parse_range(args.n) if args.n else list(range(1, cf.SWEEP_MAX + 1))
    m_values = parse_range(args.m) if args.m else None
    rows = cf.table_analogue(args.which, n_values, m_values, args.tol)
    readings = None
    if args.which == "grid":
        readings = {(r.params["m"], r.params["n"]): cf.grid_readings(r.params["m"], r.params["n"], args.tol)
                    for r in rows}
    _emit(fileio.table_report(rows, args.format, readings), args.out)
    flagged = sum(v.verdict != "match" for r in rows for v in r.cells)
    _info(f"rows={len(rows)} mismatches={flagged}", args.out)
    return EXIT_OK


# --- parser ----------------------------------------------------------------------


def _family_flags(p, required=False):
    names = sorted(f.cli_name for f in FAMILIES.values())
    p.add_argument("--family", required=required, help="one of: " + ", ".join(names))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sombor", description="Sombor-like degree-based graph indices.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a family member as an edge list")
    _family_flags(p, required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("edgelist", "json"), default="edgelist")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("compute", help="evaluate indices on a family member or an edge-list file")
    _family_flags(p)
    p.add_argument("--input", help="edge-list file")
    p.add_argument("--indices", default="all", help="comma list of so, so1..so6, or all")
    p.add_argument("--profile", action="store_true", help="also print the degree-pair profile")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="check printed closed forms against the engine")
    p.add_argument("--families", default="all",
                   help="comma list of family names, groups (thm21,t1,t2,grid,cactus-so1,t3), cactus, or all")
    p.add_argument("--n", help="range such as 2..30")
    p.add_argument("--m", help="range such as 6..10")
    p.add_argument("--tol", type=float, default=cf.DEFAULT_TOL)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.add_argument("--summary", help="write the per-cell summary CSV here")
    p.add_argument("--verified-only", action="store_true", help="restrict to the verified-subset cells")
    p.add_argument("--fail-on-mismatch", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="check an inequality on one instance, or fuzz them all")
    p.add_argument("--check", required=True, help="fuzz, or one of: " + ", ".join(b.cli_name for b in bl.BoundId))
    _family_flags(p)
    p.add_argument("--input", help="edge-list file")
    p.add_argument("--edge", type=int, nargs=2, metavar=("U", "V"))
    p.add_argument("--monomer", action="append", help="FAMILY[:k=v,...] or @edge-list-file (repeat)")
    p.add_argument("--anchor", action="append", type=int, nargs=2, metavar=("X", "Y"), help="repeat per monomer")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--out")
    p.add_argument("--summary", help="fuzz only: write the summary CSV here")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="engine analogue of a published table")
    p.add_argument("--which", required=True, choices=cf.GROUPS)
    p.add_argument("--n", help="value or range")
    p.add_argument("--m", help="value or range (defaults to --n)")
    p.add_argument("--tol", type=float, default=cf.DEFAULT_TOL)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
