"""Cell families π on a finite group and the operations on them.

A family is staged by the strongest property it satisfies:

``generic``     every cell contains the identity;
``t_axiom``     ``s^-1 C`` is a cell for every cell C and s in C;
``bcay_valid``  additionally all cells have one size k and pairwise meet in {0}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .groups import (
    FiniteGroup, GroupMap, direct_product, generated_subgroup, group_automorphisms,
    inverse_set, translate_set,
)

STAGES = ("generic", "t_axiom", "bcay_valid")


class FamilyError(ValueError):
    """Invalid family; ``witness`` holds a machine-readable reason."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


@dataclass(frozen=True)
class CellFamily:
    group: FiniteGroup
    cells: tuple[tuple[int, ...], ...]
    validity: str
    violation: dict | None = None

    @property
    def ell(self) -> int:
        return len(self.cells)

    @property
    def k(self) -> int | None:
        sizes = {len(c) for c in self.cells}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def is_t_axiom(self) -> bool:
        return self.validity in ("t_axiom", "bcay_valid")

    @property
    def is_valid(self) -> bool:
        return self.validity == "bcay_valid"

    @property
    def is_trivial(self) -> bool:
        return self.ell < 2 or (self.k or 0) < 3

    def labelled(self) -> list[list[str]]:
        return [[self.group.labels[g] for g in c] for c in self.cells]

    def key(self) -> tuple:
        return self.cells


def canonical_cells(cells: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted({tuple(sorted(set(c))) for c in cells}))


def _t_axiom_witness(G: FiniteGroup, cells) -> dict | None:
    cellset = set(cells)
    for C in cells:
        for s in C:
            D = translate_set(G, G.inv(s), C)
            if D not in cellset:
                return {"axiom": "t_axiom", "cell": list(C), "element": s, "missing": list(D)}
    return None


def _bcay_witness(cells) -> dict | None:
    sizes = sorted({len(c) for c in cells})
    if len(sizes) > 1:
        big = next(c for c in cells if len(c) != len(cells[0]))
        return {"axiom": "uniform_size", "cell": list(cells[0]), "other": list(big)}
    for A, B in combinations(cells, 2):
        common = set(A) & set(B)
        if common != {0}:
            return {"axiom": "pairwise_identity_intersection", "cell": list(A),
                    "other": list(B), "intersection": sorted(common)}
    return None


def validate_family(G: FiniteGroup, cells: Iterable[Iterable[int]]) -> CellFamily:
    """Stage a family and record the first violated axiom with a witness."""
    canon = canonical_cells(cells)
    if not canon:
        raise FamilyError("empty family", {"axiom": "non_empty"})
    for C in canon:
        if any(not 0 <= g < G.order for g in C):
            raise FamilyError(f"cell {list(C)} has elements outside the group",
                              {"axiom": "range", "cell": list(C)})
        if 0 not in C:
            raise FamilyError(f"cell {list(C)} does not contain the identity",
                              {"axiom": "identity", "cell": list(C)})
    w = _t_axiom_witness(G, canon)
    if w is not None:
        return CellFamily(G, canon, "generic", w)
    w = _bcay_witness(canon)
    if w is not None:
        return CellFamily(G, canon, "t_axiom", w)
    return CellFamily(G, canon, "bcay_valid")


def require_valid(F: CellFamily) -> None:
    if not F.is_valid:
        raise FamilyError(f"family is only {F.validity}", F.violation)


def translate_closure(G: FiniteGroup, cells: Iterable[Iterable[int]]) -> CellFamily:
    """Smallest T-axiom family containing the given cells."""
    todo = list(canonical_cells(cells))
    seen = set(todo)
    while todo:
        C = todo.pop()
        for s in C:
            D = translate_set(G, G.inv(s), C)
            if D not in seen:
                seen.add(D)
                todo.append(D)
    return validate_family(G, seen)


def connection_set(F: CellFamily) -> tuple[int, ...]:
    return tuple(sorted({g for C in F.cells for g in C} - {0}))


def is_connected(F: CellFamily) -> bool:
    return len(generated_subgroup(F.group, connection_set(F))) == F.group.order


def multiplicity(F: CellFamily) -> int | None:
    """Constant λ if every element of S(π) lies in exactly λ cells, else None."""
    counts: dict[int, int] = {}
    for C in F.cells:
        for g in C:
            if g:
                counts[g] = counts.get(g, 0) + 1
    vals = set(counts.values())
    return vals.pop() if len(vals) == 1 else None


# ---------------------------------------------------------------------------
# translate classes and stabilizers

@dataclass(frozen=True)
class TranslateClass:
    representative: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class BetaReport:
    classes: tuple[TranslateClass, ...]
    beta_transitive: bool
    stabilizers: dict = field(hash=False)
    beta_regular: bool


def translate_class(G: FiniteGroup, C: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted({translate_set(G, G.inv(s), C) for s in C}))


def stabilizer(G: FiniteGroup, C: Sequence[int]) -> tuple[int, ...]:
    """Setwise stabilizer of a cell via ``C ∩ C^-1`` (valid for cells of a T-axiom family)."""
    return tuple(sorted(set(C) & set(inverse_set(G, C))))


def stabilizer_bruteforce(G: FiniteGroup, C: Sequence[int]) -> tuple[int, ...]:
    target = tuple(sorted(C))
    return tuple(x for x in range(G.order) if translate_set(G, x, C) == target)


def translate_classes(F: CellFamily) -> BetaReport:
    require_valid(F)
    G = F.group
    classes, seen = [], set()
    for C in F.cells:
        if C in seen:
            continue
        members = translate_class(G, C)
        seen.update(members)
        classes.append(TranslateClass(members[0], members))
    stabs = {C: stabilizer(G, C) for C in F.cells}
    transitive = len(classes) == 1
    regular = transitive and all(len(s) == 1 for s in stabs.values())
    return BetaReport(tuple(classes), transitive, stabs, regular)


# ---------------------------------------------------------------------------
# derived families

def dual_family(F: CellFamily) -> CellFamily:
    """The family ``{g C1^-1 : g in C1}`` for a β-regular family.

    C1 is the lexicographically least cell.
    """
    report = translate_classes(F)
    if not report.beta_regular:
        raise FamilyError("dual family needs a beta-regular family", {"axiom": "beta_regular"})
    G = F.group
    C1 = F.cells[0]
    C1inv = inverse_set(G, C1)
    dual = validate_family(G, [translate_set(G, g, C1inv) for g in C1])
    require_valid(dual)
    return dual


def product_family(F1: CellFamily, F2: CellFamily) -> CellFamily:
    """Family ``{C x {e}} ∪ {{e} x C'}`` on the direct product of the two groups."""
    require_valid(F1)
    require_valid(F2)
    if F1.k != F2.k:
        raise FamilyError("product needs equal cell sizes", {"axiom": "uniform_size",
                                                             "k1": F1.k, "k2": F2.k})
    G1, G2 = F1.group, F2.group
    G = direct_product(G1, G2)
    m = G2.order
    cells = [[a * m for a in C] for C in F1.cells] + [list(C) for C in F2.cells]
    return validate_family(G, cells)


def intersect_families(F1: CellFamily, F2: CellFamily, r: int) -> CellFamily | None:
    """Cells ``C ∩ C'`` of size exactly r, or None when there are none."""
    if F1.group != F2.group:
        raise FamilyError("families live on different groups")
    for F in (F1, F2):
        if not F.is_t_axiom:
            raise FamilyError("intersection needs T-axiom families", F.violation)
    cells = {tuple(sorted(set(A) & set(B))) for A in F1.cells for B in F2.cells}
    cells = [c for c in cells if len(c) == r]
    if not cells:
        return None
    return validate_family(F1.group, cells)


def t_cayley_family(G: FiniteGroup, S: Iterable[int], t: int, uniform: bool = True) -> CellFamily:
    """Cells ``{e, s, ..., s^(t-1)}`` for s in S."""
    S = sorted(set(S))
    if 0 in S:
        raise FamilyError("S must not contain the identity")
    orders = [G.element_order(s) for s in S]
    if t < 2 or t > max(orders):
        raise FamilyError("t must lie between 2 and the largest element order")
    if uniform and t > min(orders):
        raise FamilyError("t exceeds the order of some element of S",
                          {"axiom": "uniform_size", "t": t, "min_order": min(orders)})
    cells = [[G.power(s, i) for i in range(t)] for s in S]
    return validate_family(G, cells)


# ---------------------------------------------------------------------------
# automorphisms

def permutes_cells(phi: GroupMap, cells) -> bool:
    cellset = set(cells)
    return all(phi.apply_set(C) in cellset for C in cells)


def family_automorphisms(F: CellFamily, autos: list[GroupMap] | None = None) -> list[GroupMap]:
    """Aut(G, π): group automorphisms that permute the cells."""
    if autos is None:
        autos = group_automorphisms(F.group)
    return [a for a in autos if permutes_cells(a, F.cells)]


@dataclass(frozen=True)
class SwapIsomorphism:
    automorphism: GroupMap
    dual_cell: tuple[int, ...]
    involution: bool


def swap_isomorphism(F: CellFamily, autos: list[GroupMap] | None = None) -> SwapIsomorphism | None:
    """An automorphism φ with φ(C1) a cell of the dual family.

    Returns None when the family is not β-regular (no side swap can normalise
    G) or no such φ exists. Involutions are preferred, then the least image
    tuple.
    """
    require_valid(F)
    if not translate_classes(F).beta_regular:
        return None
    G = F.group
    duals = set(dual_family(F).cells)
    if autos is None:
        autos = group_automorphisms(G)
    found = [a for a in autos if a.apply_set(F.cells[0]) in duals]
    if not found:
        return None
    found.sort(key=lambda a: (a.order() != 2, a.images))
    a = found[0]
    return SwapIsomorphism(a, a.apply_set(F.cells[0]), a.order() == 2)


# ---------------------------------------------------------------------------
# serialisation

def family_to_json(F: CellFamily) -> dict:
    return {"group": group_descriptor(F.group), "cells": [list(c) for c in F.cells]}


def group_descriptor(G: FiniteGroup):
    """The group's name when it re-parses to the same table, else the raw table."""
    from .groups import GroupError, make_group
    try:
        if make_group(G.name) == G:
            return G.name
    except (GroupError, ValueError):
        pass
    return G.to_json()


def family_from_json(obj) -> CellFamily:
    from .groups import make_group
    if not isinstance(obj, dict) or "cells" not in obj or "group" not in obj:
        raise FamilyError("family JSON needs 'group' and 'cells'", {"axiom": "schema"})
    G = make_group(obj["group"])
    cells = obj["cells"]
    if not isinstance(cells, list) or not all(isinstance(c, list) for c in cells):
        raise FamilyError("'cells' must be a list of lists", {"axiom": "schema"})
    return validate_family(G, cells)
