"""Command-line interface: ``cayley-incidence <command> [options]``.

Machine-readable output goes to stdout, diagnostics to stderr. Exit codes:
0 success, 1 verification failure, 2 family validation failure,
3 time budget exhausted, 4 unknown group, 5 malformed JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import constructions as cons
from .cells import (
    CellFamily, FamilyError, family_from_json, family_to_json, is_connected, validate_family,
)
from .enumeration import (
    DEFAULT_BUDGET, EnumerationReport, classify, enumerate_group, load_golden, records_to_csv,
    reproduce_tables,
)
from .graphs import build_bcay, girth
from .groups import CATALOG, EXTRA, FiniteGroup, GroupError, make_group
from .spectrum import spectrum_direct, spectrum_via_underlying
from .verify import SUITES, run_suites

EXIT_OK, EXIT_VERIFY, EXIT_INVALID, EXIT_BUDGET, EXIT_GROUP, EXIT_JSON = 0, 1, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, code: int, message: str, witness: dict | None = None):
        super().__init__(message)
        self.code = code
        self.witness = witness or {}


# ---------------------------------------------------------------------------
# input parsing

def _json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_JSON, f"malformed {what} JSON: {exc}",
                       {"error": "malformed_json", "what": what, "detail": str(exc)}) from None


def _group(desc) -> FiniteGroup:
    try:
        return make_group(desc)
    except (GroupError, ValueError) as exc:
        raise CliError(EXIT_GROUP, str(exc), {"error": "unknown_group", "group": str(desc)}) from None


def _element(G: FiniteGroup, x) -> int:
    if isinstance(x, bool):
        raise CliError(EXIT_JSON, f"bad element {x!r}", {"error": "bad_element", "element": x})
    if isinstance(x, int):
        if not 0 <= x < G.order:
            raise CliError(EXIT_INVALID, f"element {x} outside the group",
                           {"axiom": "range", "element": x})
        return x
    if isinstance(x, str):
        try:
            return G.index(x)
        except (KeyError, ValueError):
            raise CliError(EXIT_INVALID, f"unknown element label {x!r}",
                           {"axiom": "range", "element": x}) from None
    raise CliError(EXIT_JSON, f"bad element {x!r}", {"error": "bad_element", "element": repr(x)})


def parse_elements(G: FiniteGroup, text: str) -> list[int]:
    """A JSON list of indices or labels, or comma/space separated indices."""
    text = text.strip()
    if text.startswith("["):
        data = _json(text, "element set")
        if not isinstance(data, list):
            raise CliError(EXIT_JSON, "element set must be a list", {"error": "schema"})
    else:
        data = [t for t in text.strip("{}").replace(",", " ").split()]
        data = [int(t) if t.lstrip("-").isdigit() else t for t in data]
    return [_element(G, x) for x in data]


def _cells_from(G: FiniteGroup, data) -> CellFamily:
    if not isinstance(data, list) or not all(isinstance(c, list) for c in data):
        raise CliError(EXIT_JSON, "cells must be a list of lists", {"error": "schema"})
    return validate_family(G, [[_element(G, x) for x in c] for c in data])


def load_family(args) -> CellFamily:
    """Family from --cells (with --group), --file, or a JSON document on stdin."""
    if args.cells is not None:
        if args.group is None:
            raise CliError(EXIT_JSON, "--cells needs --group", {"error": "schema"})
        return _cells_from(_group(args.group), _json(args.cells, "cells"))
    if args.file is not None:
        try:
            with open(args.file) as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(EXIT_JSON, f"cannot read {args.file}: {exc}", {"error": "io"}) from None
    elif not sys.stdin.isatty():
        text = sys.stdin.read()
    else:
        raise CliError(EXIT_JSON, "no family given (use --cells, --file or stdin)", {"error": "schema"})
    data = _json(text, "family")
    if isinstance(data, list):
        if args.group is None:
            raise CliError(EXIT_JSON, "a bare cell list needs --group", {"error": "schema"})
        return _cells_from(_group(args.group), data)
    if isinstance(data, dict) and "family" in data and "cells" not in data:
        data = data["family"]
    if not isinstance(data, dict) or "cells" not in data:
        raise CliError(EXIT_JSON, "family JSON needs 'group' and 'cells'", {"error": "schema"})
    group = data.get("group", args.group)
    if group is None:
        raise CliError(EXIT_JSON, "family JSON needs 'group'", {"error": "schema"})
    return _cells_from(_group(group), data["cells"])


def _require_valid(F: CellFamily) -> None:
    if not F.is_valid:
        raise CliError(EXIT_INVALID, f"family is only {F.validity}",
                       {"validity": F.validity, "witness": F.violation})


# ---------------------------------------------------------------------------
# output helpers

def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=False) + "\n")


def _family_out(F: CellFamily) -> dict:
    out = family_to_json(F)
    out["validity"] = F.validity
    return out


def _records_text(records) -> str:
    lines = [f"{'group':<12} {'ell':<4} {'k':<3} {'girth':<6} {'Cayley':<7} {'|Aut|':<7} orbits"]
    for r in records:
        lines.append(f"{r.group:<12} {r.ell:<4} {r.k:<3} {r.girth:<6} "
                     f"{'Yes' if r.is_cayley else 'No':<7} {r.aut_order:<7} {r.orbit_count}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands

def cmd_groups(args) -> int:
    groups = [f() for f in CATALOG.values()]
    if args.all:
        groups += [f() for f in EXTRA.values()]
    groups = [G for G in groups if args.max_order is None or G.order <= args.max_order]
    rows = [{"name": G.name, "order": G.order, "abelian": G.abelian} for G in groups]
    if args.format == "json":
        _emit(rows)
    elif args.format == "csv":
        sys.stdout.write("name,order,abelian\n" + "".join(
            f"{r['name']},{r['order']},{r['abelian']}\n" for r in rows))
    else:
        sys.stdout.write("".join(f"{r['order']:<6} {r['name']:<12} "
                                 f"{'abelian' if r['abelian'] else 'non-abelian'}\n" for r in rows))
    return EXIT_OK


def cmd_validate(args) -> int:
    F = load_family(args)
    out = {
        "group": F.group.name, "validity": F.validity, "valid": F.is_valid,
        "ell": F.ell, "k": F.k, "witness": F.violation,
    }
    if F.is_valid:
        out["connected"] = is_connected(F)
        out["trivial"] = F.is_trivial
    if args.format == "text":
        sys.stdout.write(f"{F.validity}" + (f" witness={json.dumps(F.violation)}" if F.violation else "") + "\n")
    else:
        _emit(out)
    if not F.is_valid:
        print(f"validation failed: {F.violation}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_build(args) -> int:
    F = load_family(args)
    _require_valid(F)
    X = build_bcay(F)
    if args.format == "dot":
        sys.stdout.write(X.to_dot())
    elif args.format == "text":
        g = girth(X)
        sys.stdout.write(f"gamma {X.n_gamma} beta {X.n_beta} ell {F.ell} k {F.k} "
                         f"girth {g if g != float('inf') else 'inf'}\n")
    else:
        _emit(X.to_json())
    return EXIT_OK


def cmd_spectrum(args) -> int:
    F = load_family(args)
    _require_valid(F)
    formula = spectrum_via_underlying(F)
    direct = spectrum_direct(build_bcay(F))
    agree = formula.matches(direct)
    if args.format == "text":
        sys.stdout.write(f"formula {formula.format()}\ndirect  {direct.format()}\nagree {agree}\n")
    else:
        _emit({"formula": formula.to_json(), "direct": direct.to_json(), "agree": agree})
    if not agree:
        print("formula and direct spectra disagree", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_classify(args) -> int:
    F = load_family(args)
    _require_valid(F)
    rec = classify(F)
    if args.format == "csv":
        sys.stdout.write(records_to_csv([rec]))
    elif args.format == "text":
        sys.stdout.write(_records_text([rec]))
    else:
        _emit(rec.to_json())
    return EXIT_OK


def _report_out(report: EnumerationReport, fmt: str) -> None:
    if fmt == "csv":
        sys.stdout.write(report.to_csv())
    elif fmt == "text":
        sys.stdout.write(f"{report.group}: {report.count} non-trivial graph(s)"
                         + (" [PARTIAL]" if report.partial else "") + "\n")
        sys.stdout.write(_records_text(report.records))
    else:
        _emit(report.to_json())


def cmd_enumerate(args) -> int:
    if args.group is None:
        raise CliError(EXIT_JSON, "enumerate needs --group", {"error": "schema"})
    G = _group(args.group)
    report = enumerate_group(G, args.budget_seconds, args.workers)
    _report_out(report, args.format)
    if report.partial:
        print(f"time budget exhausted; {report.count} graph(s) found so far (partial)", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_tables(args) -> int:
    golden = load_golden(args.golden_dir) if args.golden_dir else None
    bundle = reproduce_tables(args.max_order, args.budget_seconds, args.workers, golden)
    if args.format == "json":
        _emit(bundle.to_json())
    elif args.format == "csv":
        sys.stdout.write(bundle.to_csv())
    else:
        sys.stdout.write(bundle.format_text())
    for d in bundle.diffs:
        print(("DISCREPANCY " if d.blocking else "note ") + d.format(), file=sys.stderr)
    return EXIT_BUDGET if bundle.partial else EXIT_OK


def cmd_construct(args) -> int:
    name, rest = args.name, args.params
    try:
        if name == "fano":
            F = cons.fano_family()
        elif name == "heawood":
            X = cons.heawood_graph()
            if args.format == "dot":
                sys.stdout.write(X.to_dot("Heawood"))
            else:
                _emit(X.to_json())
            return EXIT_OK
        elif name in ("ag", "pg"):
            if len(rest) != 2:
                raise CliError(EXIT_JSON, f"{name} needs n q", {"error": "usage"})
            n, q = int(rest[0]), int(rest[1])
            F = cons.ag_family(n, q) if name == "ag" else cons.pg_family(n, q)
        elif name == "diffset":
            if len(rest) != 2:
                raise CliError(EXIT_JSON, "diffset needs <group> <set>", {"error": "usage"})
            G = _group(rest[0])
            D, shift = cons.normalize_difference_set(G, parse_elements(G, rest[1]))
            if shift:
                print(f"difference set shifted by the inverse of {G.labels[shift]} to contain the identity",
                      file=sys.stderr)
            fams = cons.diffset_to_families(G, D)
            F = fams.pi_dinv
        elif name == "tcayley":
            if len(rest) != 3:
                raise CliError(EXIT_JSON, "tcayley needs <group> <set> <t>", {"error": "usage"})
            G = _group(rest[0])
            F = cons.t_cayley_family(G, parse_elements(G, rest[1]), int(rest[2]))
        elif name == "bicay":
            if len(rest) != 2:
                raise CliError(EXIT_JSON, "bicay needs <group> <set>", {"error": "usage"})
            G = _group(rest[0])
            F = cons.bicay_to_bcay(G, parse_elements(G, rest[1]))
        else:
            raise CliError(EXIT_JSON, f"unknown construction {name!r}", {"error": "usage"})
    except ValueError as exc:
        if isinstance(exc, FamilyError):
            raise
        raise CliError(EXIT_INVALID, str(exc), {"error": "parameters"}) from None
    _emit(_family_out(F))
    return EXIT_OK if F.is_valid else EXIT_INVALID


def cmd_convert(args) -> int:
    if args.group is None or args.set is None:
        raise CliError(EXIT_JSON, "convert needs --group and --set", {"error": "usage"})
    G = _group(args.group)
    S = parse_elements(G, args.set)
    if args.kind == "bipartite-cayley":
        conv = cons.bipartite_cayley_to_bcay(G, S)
        out = _family_out(conv.family)
        out["embedding"] = [G.labels[g] for g in conv.embedding]
        out["isomorphic"] = conv.isomorphic
    else:
        F = cons.bicay_to_bcay(G, S)
        out = _family_out(F)
    _emit(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    only = args.only.split(",") if args.only else None
    if only:
        unknown = [n for n in only if n not in SUITES]
        if unknown:
            raise CliError(EXIT_JSON, f"unknown suite(s): {', '.join(unknown)}", {"error": "usage"})
    golden = load_golden(args.golden_dir) if args.golden_dir else None
    results = run_suites(args.max_order, only, golden, args.budget_seconds, args.workers)
    if args.format == "json":
        _emit([r.to_json() for r in results])
    else:
        for r in results:
            sys.stdout.write(f"{'PASS' if r.passed else 'FAIL'} {r.name} checked={r.checked} "
                             f"failures={len(r.failures)}\n")
            for f in r.failures:
                sys.stdout.write("  " + (f.get("text") or json.dumps(f)) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cayley-incidence",
                                description="Cayley incidence graphs: build, analyse, enumerate.")
    sub = p.add_subparsers(dest="command", required=True)

    def family_opts(sp, formats, default="json"):
        sp.add_argument("--group", help="group descriptor, e.g. C7, Z3xZ3, Dic4, S4")
        sp.add_argument("--cells", help='inline JSON cell list, e.g. "[[0,1,3],[0,2,6],[0,4,5]]"')
        sp.add_argument("--file", help="JSON family file {\"group\": ..., \"cells\": ...}")
        sp.add_argument("--format", choices=formats, default=default)

    def run_opts(sp):
        sp.add_argument("--budget-seconds", type=float, default=DEFAULT_BUDGET)
        sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("groups", help="list catalog groups")
    sp.add_argument("--max-order", type=int)
    sp.add_argument("--all", action="store_true", help="include S4 and Z7:Z3")
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sp.set_defaults(func=cmd_groups)

    for name, func, formats in (
        ("validate", cmd_validate, ("json", "text")),
        ("build", cmd_build, ("json", "dot", "text")),
        ("spectrum", cmd_spectrum, ("json", "text")),
        ("classify", cmd_classify, ("json", "csv", "text")),
    ):
        sp = sub.add_parser(name)
        family_opts(sp, formats)
        sp.set_defaults(func=func)

    sp = sub.add_parser("enumerate", help="all non-trivial graphs of one group")
    sp.add_argument("--group")
    sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
    run_opts(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("tables", help="reproduce the appendix tables and diff with golden data")
    sp.add_argument("--max-order", type=int, default=16)
    sp.add_argument("--golden-dir")
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    run_opts(sp)
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("construct", help="fano | heawood | ag n q | pg n q | diffset G D | "
                                          "tcayley G S t | bicay G S")
    sp.add_argument("name")
    sp.add_argument("params", nargs="*")
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("convert", help="bipartite Cayley or bi-Cayley graph to a cell family")
    sp.add_argument("kind", choices=("bipartite-cayley", "bicay"))
    sp.add_argument("--group")
    sp.add_argument("--set", help="connection set: JSON list of indices or labels")
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("verify", help="run the invariant suites")
    sp.add_argument("--max-order", type=int, default=12)
    sp.add_argument("--only", help=f"comma-separated subset of {','.join(SUITES)}")
    sp.add_argument("--golden-dir")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    run_opts(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit({"error": str(exc), "witness": exc.witness})
        return exc.code
    except FamilyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit({"error": str(exc), "witness": exc.witness})
        return EXIT_INVALID
    except GroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit({"error": str(exc), "witness": {"error": "group"}})
        return EXIT_GROUP


if __name__ == "__main__":
    sys.exit(main())
