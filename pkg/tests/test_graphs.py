from __future__ import annotations

import math

import networkx as nx
import numpy as np
import pytest

from cayley_incidence.cells import validate_family
from cayley_incidence.constructions import fano_family, heawood_graph
from cayley_incidence.graphs import (
    SimpleGraph, biadjacency_identity_check, biadjacency_mismatches, build_bcay, build_bicayley,
    build_cayley, girth, graph_to_json_text, halved_graphs, is_bipartite, underlying_cayley,
)
from cayley_incidence.groups import cyclic, make_group


def _nx(X) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(len(X.adjacency)))
    g.add_edges_from((u, v) for u, nb in enumerate(X.adjacency) for v in nb)
    return g


def test_heawood_shape():
    X = heawood_graph()
    assert (X.n_gamma, X.n_beta, X.n) == (7, 7, 14)
    assert set(X.as_simple().degrees()) == {3}
    assert girth(X) == 6 and is_bipartite(X)
    assert nx.is_isomorphic(_nx(X), nx.heawood_graph())


def test_neighbourhoods_follow_left_translation():
    F = fano_family()
    X = build_bcay(F)
    G = F.group
    for j, B in enumerate(X.beta):
        for g in B:
            assert X.n_gamma + j in X.adjacency[g]
    # each block is g C for some g and some cell C
    for B in X.beta:
        assert any(tuple(sorted(G.mul(g, c) for c in C)) == B for g in range(7) for C in F.cells)


def test_identity_holds_and_mismatches_empty():
    F = fano_family()
    X = build_bcay(F)
    assert biadjacency_identity_check(X, F)
    assert biadjacency_mismatches(X, F) == []
    N = X.biadjacency()
    A = underlying_cayley(F).adjacency_matrix()
    assert np.array_equal(N @ N.T, A + 3 * np.eye(7, dtype=N.dtype))


def test_invalid_family_refused_unless_allowed():
    G = cyclic(5)
    F = validate_family(G, [[0, 1, 2], [0, 3, 4]])
    with pytest.raises(ValueError):
        build_bcay(F)
    X = build_bcay(F, allow_invalid=True)
    assert X.n_gamma == 5


@pytest.mark.parametrize("name", ["Z12", "Dic3", "Q8", "A4"])
def test_girth_against_networkx(name):
    G = make_group(name)
    X = build_cayley(G, [1, 2, G.inv(1), G.inv(2)] if G.order > 2 else [1])
    assert girth(X) == nx.girth(_nx(X))


def test_girth_of_forest_is_infinite():
    T = SimpleGraph.from_edges(3, [(0, 1), (1, 2)])
    assert math.isinf(girth(T))


def test_halved_graphs_of_heawood():
    hg, hb = halved_graphs(heawood_graph())
    assert hg.n == hb.n == 7
    assert set(hg.degrees()) == {6}  # K7


def test_bicayley_graph():
    X = build_bicayley(cyclic(7), (), (), [1, 2, 4])
    assert X.n == 14 and set(X.degrees()) == {3}
    assert nx.is_isomorphic(_nx(X), nx.heawood_graph())


def test_serialisation():
    X = heawood_graph()
    text = graph_to_json_text(X)
    assert '"edges"' in text or '"adjacency"' in text
    assert X.to_dot().startswith("graph")
