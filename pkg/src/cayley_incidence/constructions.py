"""Named constructions: difference sets, AG/PG geometries, two-cell families,
bipartite Cayley and bi-Cayley conversions, and Cayley certificates."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .canon import canonical_certificate, isomorphism
from .cells import (
    CellFamily, FamilyError, require_valid, translate_classes, validate_family,
)
from .fields import FieldError, field_table, gaussian_one, prime_power
from .graphs import (
    BipartiteIncidenceGraph, SimpleGraph, build_bcay, build_bicayley, build_cayley,
    girth, halved_graphs,
)
from .groups import (
    FiniteGroup, GroupError, abelian, bipartition_homomorphism, cyclic, generalized_dihedral,
    inverse_set, is_subgroup, make_group, subgroup_as_group, translate_set,
)
from .symmetry import is_graph_automorphism, swap_regular_subgroup

# ---------------------------------------------------------------------------
# difference sets


def difference_counts(G: FiniteGroup, D: Iterable[int], side: str = "right") -> Counter:
    """Multiset of d·d'^-1 (``right``) or d^-1·d' (``left``) over ordered pairs d ≠ d'."""
    D = sorted(set(D))
    out: Counter = Counter()
    for d, e in product(D, D):
        if d != e:
            out[G.mul(d, G.inv(e)) if side == "right" else G.mul(G.inv(d), e)] += 1
    return out


def is_difference_set(G: FiniteGroup, D: Iterable[int], lam: int) -> bool:
    """Every non-identity element is d·d'^-1 for exactly λ pairs of D.

    With λ = 1 the left-difference form is checked too; the two must agree.
    """
    D = sorted(set(D))
    right = difference_counts(G, D, "right")
    ok = all(right.get(g, 0) == lam for g in range(1, G.order))
    if lam == 1:
        inj_r = all(c == 1 for c in right.values())
        inj_l = all(c == 1 for c in difference_counts(G, D, "left").values())
        if inj_r != inj_l:
            raise AssertionError("left and right difference injectivity disagree")
    return ok


def normalize_difference_set(G: FiniteGroup, D: Iterable[int]) -> tuple[tuple[int, ...], int]:
    """Shift D to ``D d^-1`` (d the least element) when D misses the identity.

    Returns the new set and the shift d (0 when no shift was needed).
    """
    D = sorted(set(D))
    if not D:
        raise FamilyError("empty difference set", {"axiom": "non_empty"})
    if 0 in D:
        return tuple(D), 0
    d = D[0]
    return translate_set(G, G.inv(d), D, side="right"), d


@dataclass(frozen=True)
class DiffsetFamilies:
    pi_dinv: CellFamily     # {d D^-1 : d in D}
    pi_d: CellFamily        # {d^-1 D : d in D}
    is_difference_set: bool
    graphs_isomorphic: bool | None


def development_graph(G: FiniteGroup, D: Iterable[int]) -> SimpleGraph:
    """Point-block incidence graph of dev(D): points G, blocks Dg (deduplicated)."""
    D = sorted(set(D))
    blocks = sorted({translate_set(G, g, D, side="right") for g in range(G.order)})
    n = G.order
    edges = [(p, n + j) for j, B in enumerate(blocks) for p in B]
    labels = list(G.labels) + [f"D{j}" for j in range(len(blocks))]
    return SimpleGraph.from_edges(n + len(blocks), edges, labels)


def diffset_to_families(G: FiniteGroup, D: Iterable[int]) -> DiffsetFamilies:
    """The families π_{D^-1} and π_D, plus the four-way isomorphism check
    (dev(D), dev(D^-1), both BCay graphs) when D is an (n, k, 1)-difference set."""
    D = tuple(sorted(set(D)))
    if 0 not in D:
        raise FamilyError("difference set must contain the identity; shift it first",
                          {"axiom": "identity", "cell": list(D)})
    Dinv = inverse_set(G, D)
    pi_dinv = validate_family(G, [translate_set(G, d, Dinv) for d in D])
    pi_d = validate_family(G, [translate_set(G, G.inv(d), D) for d in D])
    is_ds = is_difference_set(G, D, 1)
    iso = None
    if is_ds and len(D) >= 2:
        certs = {
            canonical_certificate(development_graph(G, D)),
            canonical_certificate(development_graph(G, Dinv)),
            canonical_certificate(build_bcay(pi_dinv)),
            canonical_certificate(build_bcay(pi_d)),
        }
        iso = len(certs) == 1
    return DiffsetFamilies(pi_dinv, pi_d, is_ds, iso)


def find_difference_sets(G: FiniteGroup, k: int) -> list[tuple[int, ...]]:
    """All (n, k, 1)-difference sets of G containing the identity (exhaustive)."""
    n = G.order
    if k * (k - 1) != n - 1:
        return []
    out = []
    for rest in combinations(range(1, n), k - 1):
        D = (0,) + rest
        if is_difference_set(G, D, 1):
            out.append(D)
    return out


# ---------------------------------------------------------------------------
# designs


@dataclass(frozen=True)
class DesignReport:
    v: int
    k: int | None
    lam: int | None
    r: int | None
    b: int
    is_design: bool
    is_symmetric: bool


def two_design_check(X: BipartiteIncidenceGraph) -> DesignReport:
    """Test the 2-design property on points γ and blocks β by direct pair counting."""
    v, blocks = X.n_gamma, X.beta
    b = len(blocks)
    sizes = {len(B) for B in blocks}
    k = sizes.pop() if len(sizes) == 1 else None
    cover: Counter = Counter()
    for B in blocks:
        for pair in combinations(sorted(B), 2):
            cover[pair] += 1
    counts = {cover.get(pair, 0) for pair in combinations(range(v), 2)}
    lam = counts.pop() if len(counts) == 1 else None
    degrees = {sum(1 for B in blocks if p in B) for p in range(v)}
    r = degrees.pop() if len(degrees) == 1 else None
    is_design = k is not None and lam is not None and lam > 0 and r is not None
    if is_design and k > 1:
        is_design = r * (k - 1) == lam * (v - 1) and b * k == v * r
    return DesignReport(v, k, lam, r, b, bool(is_design), bool(is_design and b == v))


# ---------------------------------------------------------------------------
# finite geometries


def ag_family(n: int, q: int) -> CellFamily:
    """Lines through the origin of AG(n, q) as cells on (F_q^+)^n."""
    p, e = prime_power(q)
    if n < 1:
        raise FieldError("dimension must be at least 1")
    F = field_table(p, e) if e > 1 else None
    dims = e * n
    if p ** dims > 4096:
        raise FieldError("group too large")
    G = abelian(*([p] * dims), name=f"Z{p}^{dims}") if dims > 1 else cyclic(p)

    def index(vec: Sequence[Sequence[int]]) -> int:
        out = 0
        for coord in vec:
            for a in coord:
                out = out * p + a
        return out

    coords = [(0,) * e] + ([tuple(x) for x in F.antilog] if F else [(a,) for a in range(1, p)])
    scalars = coords[1:]

    def smul(k, a):
        if F is None:
            return ((k[0] * a[0]) % p,)
        return F.mul(k, a)

    cells = set()
    for vec in product(coords, repeat=n):
        if all(c == coords[0] for c in vec):
            continue
        cell = {0} | {index([smul(k, a) for a in vec]) for k in scalars}
        cells.add(tuple(sorted(cell)))
    return validate_family(G, cells)


def pg_family(n: int, q: int) -> CellFamily:
    """Lines through the point ⟨α^0⟩ of PG(n-1, q) on Z_{(q^n-1)/(q-1)}, via discrete logs."""
    if n < 3:
        raise FieldError("projective family needs n >= 3")
    p, e = prime_power(q)
    m = gaussian_one(n, q)
    if m > 64:
        raise FieldError(f"(q^n-1)/(q-1) = {m} exceeds 64")
    F = field_table(p, e * n)
    # F_q inside F_{q^n}: 0 and the powers α^(j·m)
    subfield = [F.zero] + [F.antilog[(j * m) % (F.order - 1)] for j in range(q - 1)]
    one = F.antilog[0]
    cells = set()
    for i in range(1, m):
        ai = F.antilog[i]
        pts = set()
        for k1 in subfield:
            for k2 in subfield:
                x = F.add(F.mul(k1, one), F.mul(k2, ai))
                if x != F.zero:
                    pts.add(F.log[x] % m)
        cells.add(tuple(sorted(pts)))
    return validate_family(cyclic(m), cells)


# ---------------------------------------------------------------------------
# two-cell families


@dataclass(frozen=True)
class TwoCellReport:
    case: int
    c1: tuple[int, ...]
    c2: tuple[int, ...]
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    x: int | None
    shape: str | None


def classify_two_cell(F: CellFamily, first_cell: Iterable[int] | None = None) -> TwoCellReport:
    """Case 1: both cells are subgroups. Case 2: C1 = S1 ∪ S1x, C2 = S2 ∪ S2x^-1 with
    S2 = x^-1 S1 x. For abelian groups also name the connected graph's shape."""
    require_valid(F)
    if F.ell != 2:
        raise FamilyError("classification needs exactly two cells", {"axiom": "two_cells", "ell": F.ell})
    G = F.group
    c1, c2 = F.cells
    if first_cell is not None:
        want = tuple(sorted(set(first_cell)))
        if want not in F.cells:
            raise FamilyError("first_cell is not a cell of the family")
        c1, c2 = (want, c2) if want == c1 else (c2, c1)
    shape = None
    if is_subgroup(G, c1) and is_subgroup(G, c2):
        case, s1, s2, x = 1, c1, c2, None
    else:
        s1 = tuple(sorted(set(c1) & set(inverse_set(G, c1))))
        s2 = tuple(sorted(set(c2) & set(inverse_set(G, c2))))
        xs = [y for y in c1 if translate_set(G, G.inv(y), c1) == c2]
        if not xs:
            raise AssertionError("two-cell family is neither two subgroups nor one translate class")
        x = min(xs, key=lambda y: (G.element_order(y), y))
        xi = G.inv(x)
        assert set(c1) == set(s1) | set(translate_set(G, x, s1, side="right"))
        assert set(c2) == set(s2) | set(translate_set(G, xi, s2, side="right"))
        assert s2 == tuple(sorted(G.mul(G.mul(xi, s), x) for s in s1))
        case = 2
    if G.abelian:
        X = build_bcay(F)
        if X.as_simple().is_connected():
            if all(d == 2 for d in X.as_simple().degrees()):
                shape = "cycle"
            elif case == 1:
                m = len(c1)
                Hb = halved_graphs(X)[1]
                Kmm = SimpleGraph.from_edges(2 * m, [(a, m + b) for a in range(m) for b in range(m)])
                if canonical_certificate(Hb) == canonical_certificate(Kmm):
                    shape = f"subdivision of K_{{{m},{m}}}"
    return TwoCellReport(case, c1, c2, s1, s2, x, shape)


# ---------------------------------------------------------------------------
# conversions


def _four_cycle(adj) -> list[int] | None:
    """Some 4-cycle [a, u, b, w] if the graph has one."""
    n = len(adj)
    for a in range(n):
        seen: dict[int, int] = {}
        for u in adj[a]:
            for b in adj[u]:
                if b == a:
                    continue
                if b in seen and seen[b] != u:
                    return [a, seen[b], b, u]
                seen.setdefault(b, u)
    return None


@dataclass(frozen=True)
class BipartiteConversion:
    subgroup: FiniteGroup
    embedding: tuple[int, ...]
    family: CellFamily
    isomorphic: bool


def bipartite_cayley_to_bcay(G: FiniteGroup, S: Iterable[int]) -> BipartiteConversion:
    """Bipartite Cay(G, S) of girth >= 6 as BCay(G0, π) with G0 the even-side kernel
    and cells C_i = {s_i s_j : j}."""
    S = sorted(set(S))
    X = build_cayley(G, S)
    phi = bipartition_homomorphism(G, S)
    if phi is None:
        raise FamilyError("Cayley graph is not bipartite", {"axiom": "bipartite"})
    cyc = _four_cycle(X.adjacency)
    if cyc is not None:
        raise FamilyError("Cayley graph has girth < 6",
                          {"axiom": "girth", "cycle": [G.labels[v] for v in cyc], "vertices": cyc})
    kernel = [g for g in range(G.order) if phi(g) == 0]
    K, embed = subgroup_as_group(G, kernel, name=f"ker({G.name})")
    pos = {g: i for i, g in enumerate(embed)}
    cells = [[pos[G.mul(si, sj)] for sj in S] for si in S]
    F = validate_family(K, cells)
    require_valid(F)
    iso = canonical_certificate(build_bcay(F)) == canonical_certificate(X)
    return BipartiteConversion(K, embed, F, iso)


def bicay_to_bcay(G: FiniteGroup, S: Iterable[int]) -> CellFamily:
    """BiCay(G, ∅, ∅, S) of girth >= 6 as BCay(G, π) with C_i = s_i^-1 S."""
    S = sorted(set(S))
    if len(S) < 2:
        raise FamilyError("bi-Cayley conversion needs |S| >= 2 (ell = k = 1 is trivial)",
                          {"axiom": "trivial", "ell": len(S)})
    X = build_bicayley(G, (), (), S)
    cyc = _four_cycle(X.adjacency)
    if cyc is not None:
        raise FamilyError("bi-Cayley graph has girth < 6",
                          {"axiom": "girth", "cycle": [X.labels[v] for v in cyc], "vertices": cyc})
    F = validate_family(G, [translate_set(G, G.inv(s), S) for s in S])
    require_valid(F)
    if canonical_certificate(build_bcay(F)) != canonical_certificate(X):
        raise AssertionError("bi-Cayley graph and BCay graph are not isomorphic")
    return F


# ---------------------------------------------------------------------------
# Cayley certificates


@dataclass(frozen=True)
class CayleyCertificate:
    group: FiniteGroup
    connection_set: tuple[int, ...]
    verified: bool


def dihedral_certificate(F: CellFamily) -> CayleyCertificate:
    """For abelian β-regular F: BCay(G, π) ≅ Cay(dih(G), {(c^-1, 1) : c ∈ C1})."""
    require_valid(F)
    G = F.group
    if not G.abelian:
        raise FamilyError("dihedral certificate needs an abelian group", {"axiom": "abelian"})
    if not translate_classes(F).beta_regular:
        raise FamilyError("dihedral certificate needs a beta-regular family", {"axiom": "beta_regular"})
    D = generalized_dihedral(G)
    T = tuple(sorted(G.inv(c) * 2 + 1 for c in F.cells[0]))
    ok = canonical_certificate(build_cayley(D, T)) == canonical_certificate(build_bcay(F))
    return CayleyCertificate(D, T, ok)


def group_from_regular_action(gens: Sequence[Sequence[int]], name: str = "H") -> FiniteGroup:
    """The regular group generated by gens, with element u = the unique map 0 -> u."""
    from .symmetry import _closure
    H = _closure([tuple(g) for g in gens], len(gens[0]))
    by_image = {h[0]: h for h in H}
    n = len(by_image)
    if n != len(gens[0]):
        raise GroupError("generators do not act regularly")
    table = [[by_image[u][v] for v in range(n)] for u in range(n)]
    return FiniteGroup(table, name=name)


def swap_certificate(F: CellFamily) -> CayleyCertificate | None:
    """Cayley presentation from a side-swapping automorphism (β-regular F, any group).

    The regular group is L(G) extended by the swap; the connection set is the
    neighbourhood of the identity vertex.
    """
    require_valid(F)
    X = build_bcay(F)
    gens = swap_regular_subgroup(F, X)
    if gens is None:
        return None
    H = group_from_regular_action(gens, name=f"{F.group.name}:Z2")
    T = tuple(X.adjacency[0])
    ok = canonical_certificate(build_cayley(H, T)) == canonical_certificate(X)
    return CayleyCertificate(H, T, ok)


def t_cayley_family(G: FiniteGroup, S: Iterable[int], t: int) -> CellFamily:
    from .cells import t_cayley_family as _t
    return _t(G, S, t)


def fano_family() -> CellFamily:
    return validate_family(cyclic(7), [[0, 1, 3], [0, 2, 6], [0, 4, 5]])


def heawood_graph() -> BipartiteIncidenceGraph:
    return build_bcay(fano_family())
