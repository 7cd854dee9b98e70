from __future__ import annotations

from itertools import permutations

from hypothesis import given, settings, strategies as st

from cayley_incidence.permgroup import PermutationGroup, compose, identity, invert, is_identity, orbits


def _closure(gens, n):
    e = identity(n)
    seen = {e}
    todo = [e]
    while todo:
        x = todo.pop()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def test_basic_operations():
    a = (1, 2, 0)
    assert is_identity(compose(a, invert(a)))
    assert orbits(5, [(1, 0, 2, 3, 4), (0, 1, 3, 2, 4)]) == [[0, 1], [2, 3], [4]]


def test_symmetric_group_order():
    G = PermutationGroup(5, [(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)])
    assert G.order() == 120 and G.is_transitive()
    assert all(G.contains(p) for p in permutations(range(5)))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.permutations(list(range(6))), min_size=1, max_size=3))
def test_order_and_membership_match_closure(gens):
    gens = [tuple(g) for g in gens]
    G = PermutationGroup(6, gens)
    elems = _closure(gens, 6)
    assert G.order() == len(elems)
    assert set(G.elements()) == elems
    outsider = [p for p in permutations(range(6)) if p not in elems][:5]
    assert not any(G.contains(p) for p in outsider)


def test_stabilizer_elements():
    G = PermutationGroup(4, [(1, 2, 3, 0), (1, 0, 2, 3)], base=[0])
    stab = list(G.stabilizer_elements(1))
    assert len(stab) == 6 and all(p[0] == 0 for p in stab)
