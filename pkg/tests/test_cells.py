from __future__ import annotations

import json

import pytest

from cayley_incidence.cells import (
    FamilyError, connection_set, dual_family, family_automorphisms, family_from_json, family_to_json,
    intersect_families, is_connected, multiplicity, product_family, stabilizer, stabilizer_bruteforce,
    swap_isomorphism, t_cayley_family, translate_class, translate_classes, translate_closure,
    validate_family,
)
from cayley_incidence.groups import cyclic, make_group, quaternion

FANO = [[0, 1, 3], [0, 2, 6], [0, 4, 5]]


def test_fano_family_is_valid_and_beta_regular():
    F = validate_family(cyclic(7), FANO)
    assert F.is_valid and (F.ell, F.k) == (3, 3) and not F.is_trivial
    rep = translate_classes(F)
    assert rep.beta_transitive and rep.beta_regular
    assert connection_set(F) == tuple(range(1, 7))
    assert is_connected(F)


def test_staging_and_witnesses():
    G = cyclic(5)
    F = validate_family(G, [[0, 1, 2], [0, 3, 4]])
    assert F.validity == "generic" and F.violation["axiom"] == "t_axiom"
    closed = translate_closure(G, [[0, 1, 2]])
    assert closed.is_t_axiom and not closed.is_valid
    assert closed.violation["axiom"] == "pairwise_identity_intersection"
    with pytest.raises(FamilyError) as exc:
        validate_family(G, [[1, 2]])
    assert exc.value.witness["axiom"] == "identity"
    with pytest.raises(FamilyError):
        validate_family(G, [[0, 9]])
    with pytest.raises(FamilyError):
        validate_family(G, [])


def test_single_subgroup_cell_is_trivial():
    F = validate_family(cyclic(6), [[0, 2, 4]])
    assert F.is_valid and F.is_trivial and not is_connected(F)


def test_translate_class_is_orbit():
    G = cyclic(7)
    assert set(translate_class(G, (0, 1, 3))) == {(0, 1, 3), (0, 2, 6), (0, 4, 5)}


@pytest.mark.parametrize("name", ["A4", "Dic3", "Z12", "D6"])
def test_stabilizer_matches_bruteforce_on_closed_cells(name):
    # the fast formula assumes the cell sits in a valid family
    from itertools import combinations
    G = make_group(name)
    checked = 0
    for k in (2, 3, 4):
        for rest in combinations(range(1, G.order), k - 1):
            F = translate_closure(G, [(0,) + rest])
            if not F.is_valid:
                continue
            for C in F.cells:
                checked += 1
                assert stabilizer(G, C) == stabilizer_bruteforce(G, C)
    assert checked > 0


def test_subgroup_cells_have_full_stabilizer():
    G = make_group("Z3^2")
    H = (0, 1, 2)
    assert len(stabilizer(G, H)) == 3
    assert multiplicity(validate_family(G, [H, (0, 3, 6)])) is not None


def test_dual_family_and_swap():
    F = validate_family(cyclic(7), FANO)
    D = dual_family(F)
    assert D.is_valid and D.ell == 3
    sw = swap_isomorphism(F)
    assert sw is not None and sw.dual_cell in D.cells


def test_swap_requires_beta_regular():
    G = make_group("Z3^2")
    F = validate_family(G, [[0, 1, 2], [0, 3, 6]])
    assert not translate_classes(F).beta_regular
    assert swap_isomorphism(F) is None
    with pytest.raises(FamilyError):
        dual_family(F)


def test_quaternion_family_from_the_literature():
    # 1, i, -j style cells; the index labels come from the group itself
    Q = quaternion()
    cells = [Q.elements_of("1", "i", "-j"), Q.elements_of("1", "-i", "k"), Q.elements_of("1", "j", "-k")]
    F = validate_family(Q, cells)
    assert F.is_valid and translate_classes(F).beta_regular
    assert swap_isomorphism(F) is not None


def test_product_family():
    F = validate_family(cyclic(7), FANO)
    P = product_family(F, F)
    assert P.is_valid and P.ell == 6 and P.group.order == 49


def test_intersection_family_z15():
    G = cyclic(15)
    p1 = validate_family(G, [[0, 1, 4, 6], [0, 2, 11, 12], [0, 3, 5, 14], [0, 9, 10, 13]])
    p2 = validate_family(G, [[0, 1, 9, 13], [0, 2, 3, 11], [0, 4, 6, 7], [0, 8, 12, 14]])
    inter = intersect_families(p1, p2, 3)
    assert inter.cells == ((0, 2, 11), (0, 4, 6), (0, 9, 13))
    assert inter.is_valid
    assert intersect_families(p1, p2, 4) is None


def test_t_cayley_family():
    F = t_cayley_family(cyclic(7), [1, 2, 4], 3)
    assert F.validity in ("generic", "t_axiom", "bcay_valid")
    with pytest.raises(FamilyError):
        t_cayley_family(cyclic(7), [0, 1], 2)


def test_family_automorphisms_of_fano():
    F = validate_family(cyclic(7), FANO)
    autos = family_automorphisms(F)
    assert len(autos) == 3  # multiplication by 1, 2, 4


def test_json_round_trip():
    F = validate_family(cyclic(7), FANO)
    obj = json.loads(json.dumps(family_to_json(F)))
    assert family_from_json(obj) == F
    with pytest.raises(FamilyError):
        family_from_json({"cells": []})
