"""Two families on the non-abelian group of order 21.

Three inverse-closed cells give a 3-regular non-Cayley graph of girth 8; two
order-3 subgroups give a (2,3)-biregular graph of girth 12 whose halved graph
on the block side is the Heawood graph.
"""

from __future__ import annotations

from cayley_incidence.canon import canonical_certificate
from cayley_incidence.cells import validate_family
from cayley_incidence.constructions import heawood_graph
from cayley_incidence.enumeration import classify
from cayley_incidence.graphs import build_bcay, girth, halved_graphs
from cayley_incidence.groups import cyclic_subgroup, nonabelian_21


def main() -> None:
    G = nonabelian_21()
    a, b = G.index("a"), G.index("b")
    cells = [[0, x, G.inv(x)] for x in (b, G.mul(a, b), G.mul(G.mul(a, a), b))]
    F = validate_family(G, cells)
    rec = classify(F)
    print("three cells:", F.labelled())
    print("  (ell, k, girth, Cayley, |Aut|, orbits) =", rec.row())

    F2 = validate_family(G, [cyclic_subgroup(G, b), cyclic_subgroup(G, G.mul(b, a))])
    X = build_bcay(F2)
    _, h_beta = halved_graphs(X)
    same = canonical_certificate(h_beta) == canonical_certificate(heawood_graph().as_simple())
    print("two subgroups:", F2.labelled())
    print(f"  girth {girth(X)}, block-side halved graph is Heawood: {same}")


if __name__ == "__main__":
    main()
