from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from cayley_incidence.groups import (
    GroupError, alternating, bipartition_homomorphism, catalog, cyclic, cyclic_subgroup, dicyclic,
    dihedral, direct_product, from_table, generalized_dihedral, generated_subgroup, group_automorphisms,
    is_automorphism, is_normal, is_subgroup, make_group, nonabelian_21, quaternion, subgroup_as_group,
    translate_set,
)


def _center(G):
    return [z for z in range(G.order) if all(G.mul(z, g) == G.mul(g, z) for g in range(G.order))]


def _invariants(G):
    orders = sorted(G.element_order(g) for g in range(G.order))
    squares = len({G.mul(g, g) for g in range(G.order)})
    comm = len(generated_subgroup(G, [G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))
                                      for a, b in product(range(G.order), repeat=2)]))
    return G.order, tuple(orders), len(_center(G)), squares, comm, G.abelian


def test_catalog_has_34_pairwise_nonisomorphic_groups():
    groups = catalog()
    assert len(groups) == 34
    assert all(7 <= G.order <= 16 for G in groups)
    assert len({_invariants(G) for G in groups}) == 34


def test_catalog_order_filter():
    assert [G.name for G in catalog(8)] == ["Z8", "Z4xZ2", "Z2^3", "D4", "Q8"]
    assert len(catalog(16)) == 14


@pytest.mark.parametrize("G", catalog(), ids=lambda G: G.name)
def test_tables_are_groups(G):
    t = G.table
    n = G.order
    assert all(sorted(t[i]) == list(range(n)) for i in range(n))
    assert all(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
               for a in range(n) for b in range(n) for c in range(0, n, 3))
    assert all(G.mul(g, G.inv(g)) == 0 for g in range(n))


def test_bad_table_rejected():
    with pytest.raises(GroupError):
        from_table([[0, 1], [0, 1]])
    with pytest.raises(GroupError):
        from_table([[1, 0], [0, 1]])  # identity must be index 0


def test_named_constructors():
    assert dihedral(5).order == 10 and not dihedral(5).abelian
    Q = quaternion()
    assert Q.dedekind and not Q.abelian
    assert sorted(Q.element_order(g) for g in range(8)) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert dicyclic(3).order == 12
    A4 = alternating(4)
    assert A4.order == 12 and not any(A4.element_order(g) == 6 for g in range(12))
    H = nonabelian_21()
    a, b = H.index("a"), H.index("b")
    assert (H.element_order(a), H.element_order(b)) == (7, 3)
    assert H.mul(H.mul(b, a), H.inv(b)) == H.power(a, 2)


def test_make_group_descriptors():
    assert make_group("C3xC3") == make_group("Z3^2")
    assert make_group("Z2xZ2xZ2").name == "Z2^3"
    assert make_group("M16") == make_group("Z8:Z2")
    assert make_group("dih(Z5)").order == 10
    assert make_group("S4").order == 24
    assert make_group("[[0,1],[1,0]]").order == 2
    with pytest.raises(GroupError):
        make_group("Foo9")
    with pytest.raises(GroupError):
        make_group("[[0,1],")


def test_subgroups_and_normality():
    G = dihedral(4)
    r = G.index("a")
    H = cyclic_subgroup(G, r)
    assert len(H) == 4 and is_subgroup(G, H) and is_normal(G, H)
    s = cyclic_subgroup(G, G.index("b"))
    assert is_subgroup(G, s) and not is_normal(G, s)
    assert generated_subgroup(G, [r, G.index("b")]) == tuple(range(8))
    K, emb = subgroup_as_group(G, H)
    assert K.order == 4 and K.abelian and len(emb) == 4


def test_translate_set_sides():
    G = nonabelian_21()
    a, b = G.index("a"), G.index("b")
    C = [0, a]
    assert translate_set(G, b, C, "left") == tuple(sorted([b, G.mul(b, a)]))
    assert translate_set(G, b, C, "right") == tuple(sorted([b, G.mul(a, b)]))


@pytest.mark.parametrize("name,count", [("Z7", 6), ("Z8", 4), ("Z2^3", 168), ("D4", 8),
                                        ("Q8", 24), ("Z3^2", 48), ("A4", 24), ("Z15", 8)])
def test_automorphism_group_orders(name, count):
    G = make_group(name)
    autos = group_automorphisms(G)
    assert len(autos) == count
    assert all(is_automorphism(G, a.images) for a in autos)
    assert len({a.images for a in autos}) == count


def test_generalized_dihedral_inverts():
    G = cyclic(6)
    D = generalized_dihedral(G)
    t = 1  # (e, 1)
    assert D.order == 12
    for g in range(6):
        x = 2 * g
        assert D.mul(D.mul(t, x), D.inv(t)) == D.inv(x)


def test_bipartition_homomorphism():
    D = dihedral(7)
    S = D.elements_of("b", "ab", "a^3b")
    phi = bipartition_homomorphism(D, S)
    assert phi is not None and all(phi(s) == 1 for s in S)
    assert bipartition_homomorphism(cyclic(7), [1, 2, 4]) is None


def test_direct_product_and_to_json():
    G = direct_product(cyclic(2), cyclic(3))
    assert G.order == 6 and G.abelian
    assert np.array_equal(from_table(G.to_json()).table, G.table)
