"""Walk through the smallest non-trivial Cayley incidence graph.

Builds the Fano family on Z7, checks N N^T = A + 3I, prints the spectrum,
the automorphism group order and a Cayley certificate over dih(Z7).
"""

from __future__ import annotations

from cayley_incidence.canon import automorphism_group
from cayley_incidence.cells import translate_classes
from cayley_incidence.constructions import dihedral_certificate, fano_family
from cayley_incidence.graphs import biadjacency_identity_check, build_bcay, girth
from cayley_incidence.spectrum import spectrum_direct, spectrum_via_underlying


def main() -> None:
    F = fano_family()
    X = build_bcay(F)
    print("cells:", F.labelled())
    print(f"vertices {X.n}, girth {girth(X)}")
    print("N N^T = A + ell I:", biadjacency_identity_check(X, F))
    print("spectrum (direct): ", spectrum_direct(X).format())
    print("spectrum (formula):", spectrum_via_underlying(F).format())
    print("|Aut| =", automorphism_group(X).order)
    print("beta-regular:", translate_classes(F).beta_regular)
    cert = dihedral_certificate(F)
    S = [cert.group.labels[t] for t in cert.connection_set]
    print(f"Cayley graph of {cert.group.name} with connection set {S}: verified={cert.verified}")


if __name__ == "__main__":
    main()
