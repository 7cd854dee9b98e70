"""Exhaustive isomorph-free enumeration of non-trivial Cayley incidence graphs.

A valid family is a disjoint union of translate classes [C] = {s^-1 C : s in C}
of one common cell size k, so the search runs in two stages: list every
k-subset containing the identity whose class is internally valid, then
enumerate sets of classes whose non-identity parts are pairwise disjoint.
Each connected family with at least two cells is then deduplicated by the
canonical certificate of its incidence graph. An Aut(G)-orbit memo skips
canonical labeling for families that are automorphic images of one already
labeled.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

from .canon import AutReport, CanonicalCertificate, canonical_form
from .cells import (
    CellFamily, FamilyError, canonical_cells, is_connected, require_valid,
    translate_class, translate_classes, validate_family,
)
from .graphs import build_bcay, girth
from .groups import FiniteGroup, catalog, generated_subgroup, group_automorphisms, make_group
from .spectrum import SpectrumSummary, spectrum_via_underlying
from .symmetry import is_cayley_graph

DEFAULT_BUDGET = 300.0
GOLDEN_PACKAGE = "cayley_incidence.data.golden"
CSV_COLUMNS = ("group", "ell", "k", "girth", "cayley", "aut_order", "orbits",
               "beta_transitive", "beta_regular", "cells")


class BudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# records

@dataclass(frozen=True)
class ClassificationRecord:
    group: str
    ell: int
    k: int
    girth: int
    beta_transitive: bool
    beta_regular: bool
    is_cayley: bool
    aut_order: int
    orbit_count: int
    spectrum: SpectrumSummary
    family: CellFamily
    certificate: CanonicalCertificate
    cayley_method: str = ""

    def row(self) -> tuple:
        """(ℓ, k, girth, Cayley, |Aut|, orbits): the appendix column order."""
        return (self.ell, self.k, self.girth, self.is_cayley, self.aut_order, self.orbit_count)

    def sort_key(self) -> tuple:
        return (self.k, self.ell, self.aut_order, self.orbit_count, not self.is_cayley,
                self.certificate.data)

    def to_json(self) -> dict:
        return {
            "group": self.group, "ell": self.ell, "k": self.k, "girth": self.girth,
            "beta_transitive": self.beta_transitive, "beta_regular": self.beta_regular,
            "cayley": self.is_cayley, "cayley_method": self.cayley_method,
            "aut_order": self.aut_order, "orbits": self.orbit_count,
            "spectrum": self.spectrum.to_json(),
            "cells": [list(c) for c in self.family.cells],
            "certificate": self.certificate.hex(),
        }


@dataclass(frozen=True)
class EnumerationReport:
    group: str
    records: tuple[ClassificationRecord, ...]
    partial: bool = False
    families_examined: int = 0
    order: int = 0
    table: int = 0  # appendix table holding the rows: 2 cyclic, 3 abelian, 4 otherwise

    @property
    def count(self) -> int:
        return len(self.records)

    def rows(self) -> list[tuple]:
        return [r.row() for r in self.records]

    def to_json(self) -> dict:
        return {
            "group": self.group, "order": self.order, "count": self.count, "partial": self.partial,
            "families_examined": self.families_examined,
            "records": [r.to_json() for r in self.records],
        }

    def to_csv(self) -> str:
        return records_to_csv(self.records)


def records_to_csv(records: Iterable[ClassificationRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([r.group, r.ell, r.k, r.girth, "Yes" if r.is_cayley else "No", r.aut_order,
                    r.orbit_count, r.beta_transitive, r.beta_regular,
                    json.dumps([list(c) for c in r.family.cells], separators=(",", ":"))])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# classification

def classify(F: CellFamily) -> ClassificationRecord:
    """Full record for a valid, connected, non-trivial family."""
    require_valid(F)
    if F.is_trivial:
        raise FamilyError("family is trivial (needs ell >= 2 and k >= 3)",
                          {"axiom": "non_trivial", "ell": F.ell, "k": F.k})
    if not is_connected(F):
        raise FamilyError("connection set does not generate the group",
                          {"axiom": "connected",
                           "generated": list(generated_subgroup(F.group, _support(F)))})
    X = build_bcay(F)
    canon = canonical_form(X)
    report: AutReport = canon.report
    beta = translate_classes(F)
    verdict = is_cayley_graph(X, report, family=F)
    g = girth(X)
    return ClassificationRecord(
        group=F.group.name, ell=F.ell, k=F.k, girth=int(g),
        beta_transitive=beta.beta_transitive, beta_regular=beta.beta_regular,
        is_cayley=verdict.is_cayley, aut_order=report.order,
        orbit_count=len(report.vertex_orbits), spectrum=spectrum_via_underlying(F),
        family=F, certificate=canon.certificate, cayley_method=verdict.method,
    )


def _support(F: CellFamily) -> list[int]:
    return sorted({g for C in F.cells for g in C} - {0})


# ---------------------------------------------------------------------------
# candidate classes

@dataclass(frozen=True)
class CandidateClass:
    cells: tuple[tuple[int, ...], ...]
    mask: int  # bit g set for every non-identity g covered by the class

    @property
    def size(self) -> int:
        return len(self.cells)


def max_cell_size(n: int) -> int:
    """Largest k admitting two cells: 2(k-1) <= n-1."""
    return (n - 1) // 2 + 1


def candidate_classes(G: FiniteGroup, k: int) -> list[CandidateClass]:
    """All translate classes of k-cells that are pairwise {e}-intersecting, in lex order."""
    out: dict[tuple, CandidateClass] = {}
    for rest in combinations(range(1, G.order), k - 1):
        C = (0,) + rest
        members = translate_class(G, C)
        if members in out or members[0] != C:
            continue
        mask, ok = 0, True
        for M in members:
            for g in M[1:]:
                if mask >> g & 1:
                    ok = False
                    break
                mask |= 1 << g
            if not ok:
                break
        if ok:
            out[members] = CandidateClass(members, mask)
    return sorted(out.values(), key=lambda c: c.cells)


def _compat_masks(classes: list[CandidateClass]) -> list[int]:
    """compat[i] has bit j (j > i) when classes i and j cover disjoint elements."""
    out = []
    for i, a in enumerate(classes):
        m = 0
        for j in range(i + 1, len(classes)):
            if not a.mask & classes[j].mask:
                m |= 1 << j
        out.append(m)
    return out


def class_packings(classes: list[CandidateClass], top: int | None = None,
                   deadline: float | None = None) -> Iterator[tuple[int, ...]]:
    """Index tuples of pairwise compatible classes, in lexicographic (preorder) order.

    ``top`` restricts to packings whose least index is ``top``.
    """
    compat = _compat_masks(classes)

    def rec(chosen: tuple[int, ...], cand: int) -> Iterator[tuple[int, ...]]:
        yield chosen
        while cand:
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExceeded
            j = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            yield from rec(chosen + (j,), cand & compat[j])

    tops = range(len(classes)) if top is None else [top]
    for i in tops:
        yield from rec((i,), compat[i])


# ---------------------------------------------------------------------------
# search

@dataclass
class _Found:
    position: tuple
    cells: tuple[tuple[int, ...], ...]


@dataclass
class _TaskResult:
    found: dict[bytes, _Found] = field(default_factory=dict)
    examined: int = 0
    partial: bool = False


def _family_cells(classes: list[CandidateClass], idx: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return canonical_cells(C for i in idx for C in classes[i].cells)


def _run_task(G: FiniteGroup, k: int, classes: list[CandidateClass], top: int,
              autos, deadline: float | None) -> _TaskResult:
    res = _TaskResult()
    seen: set[tuple] = set()
    try:
        for idx in class_packings(classes, top, deadline):
            cells = _family_cells(classes, idx)
            if len(cells) < 2:
                continue
            covered = 0
            for i in idx:
                covered |= classes[i].mask
            support = [g for g in range(1, G.order) if covered >> g & 1]
            if len(generated_subgroup(G, support)) != G.order:
                continue
            res.examined += 1
            if cells in seen:
                continue
            F = CellFamily(G, cells, "bcay_valid")
            cert = canonical_form(build_bcay(F)).certificate.data
            if cert not in res.found:
                res.found[cert] = _Found((k, idx), cells)
            for a in autos:
                seen.add(canonical_cells(a.apply_set(C) for C in cells))
    except BudgetExceeded:
        res.partial = True
    return res


_WORKER_AUTOS: dict = {}


def _worker_task(args) -> _TaskResult:
    table, name, k, classes, top, deadline = args
    G = FiniteGroup(table, name=name)
    if name not in _WORKER_AUTOS:
        _WORKER_AUTOS.clear()
        _WORKER_AUTOS[name] = group_automorphisms(G)
    return _run_task(G, k, classes, top, _WORKER_AUTOS[name], deadline)


def enumerate_group(G: FiniteGroup | str, budget_seconds: float | None = DEFAULT_BUDGET,
                    workers: int = 1, use_aut_prescreen: bool = True) -> EnumerationReport:
    """All non-isomorphic, connected BCay(G, π) with ℓ >= 2 and k >= 3, classified.

    On budget exhaustion the report carries what was found so far with
    ``partial=True``.
    """
    G = make_group(G)
    start = time.monotonic()
    deadline = None if budget_seconds is None else start + budget_seconds
    autos = group_automorphisms(G) if use_aut_prescreen else []
    tasks = []
    for k in range(3, max_cell_size(G.order) + 1):
        classes = candidate_classes(G, k)
        for top in range(len(classes)):
            tasks.append((k, classes, top))

    if workers > 1 and tasks:
        table = [list(r) for r in G.table]
        args = [(table, G.name, k, cl, top, deadline) for k, cl, top in tasks]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_worker_task, args))
    else:
        results = [_run_task(G, k, cl, top, autos, deadline) for k, cl, top in tasks]

    best: dict[bytes, _Found] = {}
    partial, examined = False, 0
    for r in results:
        partial |= r.partial
        examined += r.examined
        for cert, f in r.found.items():
            if cert not in best or f.position < best[cert].position:
                best[cert] = f
    records = sorted((classify(validate_family(G, f.cells)) for f in best.values()),
                     key=ClassificationRecord.sort_key)
    return EnumerationReport(G.name, tuple(records), partial, examined, G.order, table_number(G))


def table_number(G: FiniteGroup) -> int:
    if any(G.element_order(g) == G.order for g in range(G.order)):
        return 2
    return 3 if G.abelian else 4


# ---------------------------------------------------------------------------
# naive oracle

def naive_enumerate(G: FiniteGroup | str, max_cells: int | None = None,
                    max_k: int | None = None) -> set[bytes]:
    """Certificates of all families found by direct axiom checks on cell sets.

    Cells are chosen in increasing order, pairwise meeting in {e}; the
    T-axiom and connectivity are checked on each complete candidate. The
    defaults are the packing bounds, so the search is exhaustive.
    """
    G = make_group(G)
    n = G.order
    max_k = max_k or max_cell_size(n)
    certs: set[bytes] = set()
    for k in range(3, max_k + 1):
        limit = max_cells or (n - 1) // (k - 1)
        subsets = [(0,) + r for r in combinations(range(1, n), k - 1)]

        def rec(start: int, chosen: list, used: set[int]) -> None:
            if len(chosen) >= 2:
                F = validate_family(G, chosen)
                if F.is_valid and is_connected(F):
                    certs.add(canonical_form(build_bcay(F)).certificate.data)
            if len(chosen) == limit:
                return
            for i in range(start, len(subsets)):
                C = subsets[i]
                if used.isdisjoint(C[1:]):
                    rec(i + 1, chosen + [C], used | set(C[1:]))

        rec(0, [], set())
    return certs


# ---------------------------------------------------------------------------
# golden tables

@dataclass(frozen=True)
class GoldenEntry:
    """Published data for one group.

    ``rows`` is None when no rows are printed for the group; row girth is None
    where the source table has no girth column. ``listed_rows`` are rows
    printed under this name that cannot belong to it.
    """

    group: str
    table: int
    count: int
    rows: tuple[tuple, ...] | None
    note: str = ""
    listed_rows: tuple[tuple, ...] = ()
    quarantined: bool = False

    @staticmethod
    def from_json(obj: dict) -> GoldenEntry:
        def rows(v):
            return None if v is None else tuple(tuple(r) for r in v)
        try:
            return GoldenEntry(str(obj["group"]), int(obj["table"]), int(obj["count"]),
                               rows(obj.get("rows")), obj.get("note", ""),
                               rows(obj.get("listed_rows")) or (), bool(obj.get("quarantined", False)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed golden entry: {exc}") from None


def golden_dir() -> Path:
    return Path(str(resources.files(GOLDEN_PACKAGE)))


def load_golden(directory: str | Path | None = None) -> dict[str, GoldenEntry]:
    d = Path(directory) if directory is not None else golden_dir()
    out = {}
    for p in sorted(d.glob("*.json")):
        e = GoldenEntry.from_json(json.loads(p.read_text()))
        out[e.group] = e
    return out


def row_matches(record_row: tuple, golden_row: tuple) -> bool:
    """Field-wise equality; a None golden field (unknown girth) matches anything."""
    return len(record_row) == len(golden_row) and all(
        g is None or r == g for r, g in zip(record_row, golden_row))


def rows_multiset_match(record_rows: list[tuple], golden_rows: Iterable[tuple]) -> bool:
    remaining = list(record_rows)
    for g in golden_rows:
        hit = next((r for r in remaining if row_matches(r, g)), None)
        if hit is None:
            return False
        remaining.remove(hit)
    return not remaining


def _row_text(row: tuple) -> str:
    ell, k, g, cay, aut, orb = row
    return f"({ell},{k},{'-' if g is None else g},{'Yes' if cay else 'No'},{aut},{orb})"


@dataclass(frozen=True)
class TableDiff:
    group: str
    kind: str  # count | rows | quarantine | unlisted
    expected: object
    actual: object

    @property
    def blocking(self) -> bool:
        """Count and row mismatches are failures; the other kinds are reported only."""
        return self.kind in ("count", "rows")

    def format(self) -> str:
        def show(v):
            if isinstance(v, list):
                return "[" + " ".join(_row_text(r) if isinstance(r, tuple) else str(r) for r in v) + "]"
            return str(v)
        return f"{self.group}: {self.kind}: expected {show(self.expected)}, computed {show(self.actual)}"

    def to_json(self) -> dict:
        return {"group": self.group, "kind": self.kind, "expected": self.expected, "actual": self.actual}


def compare_with_golden(reports: dict[str, EnumerationReport],
                        golden: dict[str, GoldenEntry]) -> list[TableDiff]:
    diffs: list[TableDiff] = []
    quarantined = []
    for name, r in reports.items():
        e = golden.get(name)
        if e is None:
            continue
        if e.quarantined:
            quarantined.append((e, r))
            continue
        if e.count != r.count:
            diffs.append(TableDiff(name, "count", e.count, r.count))
        if e.rows is None:
            if r.count:
                diffs.append(TableDiff(name, "unlisted", None, sorted(r.rows())))
        elif not rows_multiset_match(r.rows(), e.rows):
            diffs.append(TableDiff(name, "rows", sorted(e.rows, key=str), sorted(r.rows())))
    if quarantined:
        names = "+".join(e.group for e, _ in quarantined)
        expected = sum(e.count for e, _ in quarantined)
        actual = sum(r.count for _, r in quarantined)
        diffs.append(TableDiff(names, "quarantine", expected, actual))
        for e, r in quarantined:
            printed = list(e.rows or ()) + list(e.listed_rows)
            diffs.append(TableDiff(e.group, "quarantine", sorted(printed, key=str), sorted(r.rows())))
    return diffs


@dataclass
class TableBundle:
    reports: dict[str, EnumerationReport]
    golden: dict[str, GoldenEntry]
    diffs: list[TableDiff]

    @property
    def partial(self) -> bool:
        return any(r.partial for r in self.reports.values())

    @property
    def blocking(self) -> list[TableDiff]:
        return [d for d in self.diffs if d.blocking]

    def table(self, number: int) -> list[tuple]:
        """Table 1 rows are (order, group, count); tables 2-4 are (group,) + record row."""
        if number == 1:
            return [(r.order, name, r.count) for name, r in self.reports.items()]
        return [(name,) + rec.row() for name, r in self.reports.items() if r.table == number
                for rec in r.records]

    def format_text(self) -> str:
        lines = ["Table 1", f"{'order':<6} {'group':<12} count"]
        lines += [f"{o:<6} {name:<12} {c}" for o, name, c in self.table(1)]
        for t in (2, 3, 4):
            lines += ["", f"Table {t}", f"{'group':<12} {'ell':<4} {'k':<3} {'girth':<6} {'Cayley':<7} {'|Aut|':<7} orbits"]
            for name, ell, k, g, cay, aut, orb in self.table(t):
                lines.append(f"{name:<12} {ell:<4} {k:<3} {g:<6} {'Yes' if cay else 'No':<7} {aut:<7} {orb}")
        lines += ["", f"Discrepancies ({len(self.blocking)} blocking)"]
        lines += [("  * " if d.blocking else "    ") + d.format() for d in self.diffs] or ["  none"]
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        return records_to_csv(rec for r in self.reports.values() for rec in r.records)

    def to_json(self) -> dict:
        return {
            "partial": self.partial,
            "groups": {n: r.to_json() for n, r in self.reports.items()},
            "discrepancies": [d.to_json() for d in self.diffs],
        }


def reproduce_tables(max_order: int = 16, budget_seconds: float | None = DEFAULT_BUDGET,
                     workers: int = 1, golden: dict[str, GoldenEntry] | None = None,
                     groups: Iterable[str] | None = None) -> TableBundle:
    """Enumerate every catalog group of order <= max_order and diff against golden data.

    ``budget_seconds`` applies per group.
    """
    if max_order > 16:
        raise ValueError("table reproduction covers orders up to 16")
    golden = load_golden() if golden is None else golden
    wanted = None if groups is None else set(groups)
    reports = {}
    for G in catalog():
        if G.order > max_order or (wanted is not None and G.name not in wanted):
            continue
        reports[G.name] = enumerate_group(G, budget_seconds, workers)
    return TableBundle(reports, golden, compare_with_golden(reports, golden))
