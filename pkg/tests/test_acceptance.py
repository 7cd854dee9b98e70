"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line (visible even with
output capture on) and then asserts. Run this file directly with
``python3 tests/test_acceptance.py`` for just the eight summary lines.
"""

from __future__ import annotations

import math
import sys
import time
from collections import Counter
from itertools import combinations

import pytest

from cayley_incidence import spectrum as spectrum_mod
from cayley_incidence.canon import automorphism_group, canonical_certificate
from cayley_incidence.cells import family_automorphisms, stabilizer, stabilizer_bruteforce, validate_family
from cayley_incidence.constructions import (
    ag_family, bicay_to_bcay, bipartite_cayley_to_bcay, diffset_to_families, dihedral_certificate,
    fano_family, heawood_graph, pg_family, two_design_check,
)
from cayley_incidence.enumeration import compare_with_golden, load_golden, naive_enumerate, rows_multiset_match
from cayley_incidence.graphs import biadjacency_identity_check, build_bcay, build_cayley, girth, halved_graphs
from cayley_incidence.groups import cyclic, cyclic_subgroup, dihedral, nonabelian_21
from cayley_incidence.spectrum import spectrum_direct, spectrum_via_underlying
from cayley_incidence.symmetry import (
    brute_force_isomorphic, hypergraph_normalizer_order, regular_subgroup_search,
)

# pinned tolerances and limits
EIGEN_TOL = 1e-6
ENUMERATION_LIMIT_S = 30 * 60
ORACLE_LIMIT_S = 10 * 60
BRUTE_ISO_MAX_VERTICES = 20
NORMALIZER_MAX_ORDER = 12
NAIVE_MAX_ORDER = 10

EXPECTED_COUNTS = {
    "Z7": 1, "Z8": 1, "Z4xZ2": 0, "Z2^3": 0, "D4": 0, "Q8": 1, "Z9": 1, "Z3^2": 3,
    "Z10": 1, "D5": 0, "Z11": 1, "Z12": 4, "Z6xZ2": 2, "D6": 0, "Dic3": 3, "A4": 3,
    "Z13": 4, "Z14": 3, "D7": 0, "Z15": 16, "Z16": 8, "Z4^2": 6, "Z4xZ2^2": 1,
    "Z2^4": 4, "D8": 0, "Dic4": 5, "Z4:Z4": 3, "(Z2xZ2):Z4": 4, "QD8": 2,
    "D4xZ2": 2, "Q8xZ2": 2, "(Z4xZ2):Z2": 2,
}
QUARANTINE_PAIR = ("Z8xZ2", "Z8:Z2")
QUARANTINE_PAIR_SUM = 3

# (ell, k, girth or None, cayley, |Aut|, orbits)
Z13_ROWS = [(3, 3, None, True, 26, 1), (3, 3, None, True, 78, 1),
            (6, 3, None, False, 39, 3), (4, 4, None, True, 11232, 1)]
Z15_PINNED_ROW = (7, 3, None, False, 20160, 2)


SUMMARY: list[str] = []  # echoed by the terminal-summary hook in conftest


def _emit(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    SUMMARY.append(line)
    print(line)


def _fails(items, limit=6) -> str:
    items = list(items)
    shown = "; ".join(str(x) for x in items[:limit])
    return shown + (f"; ... ({len(items)} total)" if len(items) > limit else "")


# ---------------------------------------------------------------------------
# criterion checks: each returns (ok, detail)

def check_counts(run):
    bad = [f"{g}: expected {c}, computed {run.reports[g].count}"
           for g, c in EXPECTED_COUNTS.items() if run.reports[g].count != c]
    pair = sum(run.reports[g].count for g in QUARANTINE_PAIR)
    golden = load_golden()
    notes = [golden[g].note for g in QUARANTINE_PAIR if golden[g].note]
    if pair != QUARANTINE_PAIR_SUM:
        bad.append(f"{'+'.join(QUARANTINE_PAIR)} sum {pair}, expected {QUARANTINE_PAIR_SUM}")
    if not notes:
        bad.append("quarantine pair has no discrepancy note")
    partial = [g for g, r in run.reports.items() if r.partial]
    if partial:
        bad.append(f"partial runs: {partial}")
    if run.seconds > ENUMERATION_LIMIT_S:
        bad.append(f"runtime {run.seconds:.0f}s > {ENUMERATION_LIMIT_S}s")
    ok = not bad
    return ok, f"{len(run.reports)} groups in {run.seconds:.1f}s" + ("" if ok else f"; {_fails(bad)}")


def check_rows(run):
    golden = load_golden()
    diffs = compare_with_golden(run.reports, golden)
    bad = [d.format() for d in diffs if d.blocking]
    # the quarantined pair counts as a row mismatch too when its printed rows disagree
    pair_rows = sorted(r for g in QUARANTINE_PAIR for r in run.reports[g].rows())
    printed = [r for g in QUARANTINE_PAIR for r in (golden[g].rows or ()) + golden[g].listed_rows]
    if not rows_multiset_match(pair_rows, printed):
        bad.append(f"{'+'.join(QUARANTINE_PAIR)}: printed {len(printed)} rows, computed {len(pair_rows)}")
    z13 = run.reports["Z13"].rows()
    if not rows_multiset_match(z13, Z13_ROWS):
        bad.append(f"Z13 rows {sorted(z13)}")
    if not any(r[:2] + r[3:] == Z15_PINNED_ROW[:2] + Z15_PINNED_ROW[3:] for r in run.reports["Z15"].rows()):
        bad.append("Z15 misses (7,3,No,20160,2)")
    if run.reports["Dic4"].count != 5:
        bad.append(f"Dic4 has {run.reports['Dic4'].count} rows")
    ok = not bad
    return ok, "row multisets " + ("match" if ok else f"differ: {_fails(bad, 4)}")


def check_identity(run):
    bad = [(r.group, r.family.cells) for r in run.records
           if not biadjacency_identity_check(build_bcay(r.family), r.family)]
    return not bad, f"N N^T = A + ell I on {len(run.records)} graphs" + (f"; fails {_fails(bad)}" if bad else "")


def check_spectrum(run):
    bad = []
    for r in run.records:
        direct = spectrum_direct(build_bcay(r.family))
        if not direct.matches(spectrum_via_underlying(r.family), EIGEN_TOL):
            bad.append(r.group)
    s = spectrum_direct(heawood_graph())
    r2 = math.sqrt(2)
    expected = [(3.0, 1), (r2, 6), (-r2, 6), (-3.0, 1)]
    heawood_ok = len(s.clusters) == 4 and all(
        m == em and abs(v - ev) <= EIGEN_TOL for (v, m), (ev, em) in zip(s.clusters, expected))
    if not heawood_ok:
        bad.append(f"Heawood spectrum {s.format()}")
    if spectrum_mod.CLUSTER_TOL != EIGEN_TOL:
        bad.append(f"cluster tolerance is {spectrum_mod.CLUSTER_TOL}")
    return not bad, f"formula vs direct on {len(run.records)} graphs, Heawood {s.format()}" + (
        f"; fails {_fails(bad)}" if bad else "")


def check_girth(run):
    bad = []
    for r in run.records:
        g = girth(build_bcay(r.family))
        if g < 6:
            bad.append((r.group, r.row(), "girth < 6"))
        if r.family.group.abelian and r.beta_transitive and r.ell >= 3 and g != 6:
            bad.append((r.group, r.row(), "abelian beta-transitive ell>=3 without girth 6"))
    G = nonabelian_21()
    a, b = G.index("a"), G.index("b")
    cells = [[0, x, G.inv(x)] for x in (b, G.mul(a, b), G.mul(G.mul(a, a), b))]
    g21 = girth(build_bcay(validate_family(G, cells)))
    if g21 != 8:
        bad.append(f"order-21 three-cell family girth {g21}")
    # the coset-geometry example names the order-3 generator first
    F = validate_family(G, [cyclic_subgroup(G, b), cyclic_subgroup(G, G.mul(b, a))])
    X = build_bcay(F)
    g12 = girth(X)
    _, h_beta = halved_graphs(X)
    heawood_eq = canonical_certificate(h_beta) == canonical_certificate(heawood_graph().as_simple())
    if g12 != 12 or not heawood_eq:
        bad.append(f"coset-geometry family girth {g12}, H_beta heawood={heawood_eq}")
    return not bad, f"girth laws on {len(run.records)} graphs, order-21 girths {g21} and {g12}" + (
        f"; fails {_fails(bad)}" if bad else "")


def check_geometry(run):
    bad = []
    ds = diffset_to_families(cyclic(7), [0, 1, 3])
    fams = {"pg(3,2)": pg_family(3, 2), "diffset pi_D": ds.pi_d, "diffset pi_D^-1": ds.pi_dinv,
            "Z7 example": validate_family(cyclic(7), [[0, 1, 3], [0, 2, 6], [0, 4, 5]])}
    certs = {canonical_certificate(build_bcay(F)) for F in fams.values()}
    if len(certs) != 1:
        bad.append(f"{len(certs)} distinct certificates")
    ag = ag_family(2, 3)
    ag_row = next((r.row() for r in run.reports["Z3^2"].records
                   if canonical_certificate(build_bcay(r.family)) == canonical_certificate(build_bcay(ag))), None)
    if ag_row is None or ag_row[:2] + ag_row[3:] != (4, 3, False, 432, 2):
        bad.append(f"ag(2,3) row {ag_row}")
    for F, params in ((fano_family(), (7, 3, 1)), (ag, (9, 3, 1))):
        d = two_design_check(build_bcay(F))
        if not d.is_design or (d.v, d.k, d.lam) != params:
            bad.append(f"design {params}: {d}")
    return not bad, f"one certificate for pg/diffset/Z7, ag(2,3) row {ag_row}" + (
        f"; fails {_fails(bad)}" if bad else "")


def check_conversions(run):
    bad = []
    D = dihedral(7)
    conv = bipartite_cayley_to_bcay(D, D.elements_of("b", "ab", "a^3b"))
    heawood = canonical_certificate(heawood_graph())
    if canonical_certificate(build_bcay(conv.family)) != heawood or not conv.isomorphic:
        bad.append("D7 bipartite Cayley graph does not round-trip to Heawood")
    if bicay_to_bcay(cyclic(7), [1, 2, 4]).cells != fano_family().cells:
        bad.append("bi-Cayley Z7 {1,2,4} is not the Fano family")
    checked = 0
    for r in run.records:
        if not (r.family.group.abelian and r.beta_regular):
            continue
        checked += 1
        cert = dihedral_certificate(r.family)
        Y = build_cayley(cert.group, cert.connection_set)
        if not cert.verified or regular_subgroup_search(Y.adjacency, automorphism_group(Y)) is None:
            bad.append((r.group, r.row()))
    return not bad, f"D7 and bi-Cayley conversions, {checked} dihedral certificates" + (
        f"; fails {_fails(bad)}" if bad else "")


def check_oracles(run):
    t0 = time.perf_counter()
    bad = []
    n_cells = 0
    for r in run.records:
        for C in r.family.cells:
            n_cells += 1
            if stabilizer(r.family.group, C) != stabilizer_bruteforce(r.family.group, C):
                bad.append(("stabilizer", r.group, C))
    small = [build_bcay(r.family) for r in run.records]
    small = [X for X in small if X.n <= BRUTE_ISO_MAX_VERTICES]
    pairs = 0
    for X, Y in combinations(small, 2):
        if X.n != Y.n:
            continue
        pairs += 1
        canon_eq = canonical_certificate(X) == canonical_certificate(Y)
        if canon_eq != brute_force_isomorphic(X.adjacency, Y.adjacency):
            bad.append(("isomorphism", X.n))
    for X in small:  # every graph against a relabelled copy of itself
        perm = list(reversed(range(X.n)))
        if canonical_certificate(X.as_simple()) != canonical_certificate(X.as_simple().relabel(perm)):
            bad.append(("relabel", X.n))
    normalizers = 0
    for r in run.records:
        if r.family.group.order > NORMALIZER_MAX_ORDER:
            continue
        normalizers += 1
        n_ah = hypergraph_normalizer_order(r.family)
        expected = r.family.group.order * len(family_automorphisms(r.family))
        if n_ah != expected:
            bad.append(("normalizer", r.group, n_ah, expected))
    naive_groups = 0
    for name, rep in run.reports.items():
        if rep.order > NAIVE_MAX_ORDER:
            continue
        naive_groups += 1
        if naive_enumerate(rep.group) != {rec.certificate.data for rec in rep.records}:
            bad.append(("naive", name))
    secs = time.perf_counter() - t0
    if secs > ORACLE_LIMIT_S:
        bad.append(f"runtime {secs:.0f}s")
    detail = (f"{n_cells} stabilizers, {pairs} iso pairs + {len(small)} relabels, "
              f"{normalizers} normalizers, {naive_groups} naive groups in {secs:.1f}s")
    return not bad, detail + (f"; fails {_fails(bad)}" if bad else "")


CRITERIA = {
    1: check_counts, 2: check_rows, 3: check_identity, 4: check_spectrum,
    5: check_girth, 6: check_geometry, 7: check_conversions, 8: check_oracles,
}


TITLES = {1: "table1_counts", 2: "row_multisets", 3: "incidence_identity", 4: "spectrum",
          5: "girth_laws", 6: "geometry", 7: "conversions", 8: "oracles"}


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"{n}-{TITLES[n]}")
def test_criterion(number, catalog_run):
    ok, detail = CRITERIA[number](catalog_run)
    _emit(number, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    from conftest import make_catalog_run

    run = make_catalog_run()
    failed = 0
    for n, fn in CRITERIA.items():
        ok, detail = fn(run)
        _emit(n, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
