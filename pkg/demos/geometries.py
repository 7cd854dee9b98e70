"""Finite geometries as cell families: PG(2,q) via Singer cycles, AG(2,q), difference sets."""

from __future__ import annotations

from cayley_incidence.canon import canonical_certificate
from cayley_incidence.constructions import (
    ag_family, diffset_to_families, find_difference_sets, pg_family, two_design_check,
)
from cayley_incidence.enumeration import classify
from cayley_incidence.graphs import build_bcay
from cayley_incidence.groups import cyclic


def main() -> None:
    for q in (2, 3, 4):
        F = pg_family(3, q)
        d = two_design_check(build_bcay(F))
        print(f"PG(2,{q}) on Z{F.group.order}: cells {F.ell}, design 2-({d.v},{d.k},{d.lam})")
    for q in (3, 4, 5):  # q = 2 gives k = 2, a trivial family
        F = ag_family(2, q)
        print(f"AG(2,{q}) on {F.group.name}: row {classify(F).row()}")
    G = cyclic(13)
    D = find_difference_sets(G, 4)[0]
    fams = diffset_to_families(G, D)
    same = canonical_certificate(build_bcay(fams.pi_d)) == canonical_certificate(build_bcay(pg_family(3, 3)))
    print(f"difference set {D} in Z13: all four graphs isomorphic={fams.graphs_isomorphic}, "
          f"equals PG(2,3)={same}")


if __name__ == "__main__":
    main()
