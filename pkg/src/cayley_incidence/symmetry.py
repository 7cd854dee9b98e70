"""Cayley-ness of graphs, normalizers of the translation action, brute-force oracles."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .canon import AutReport, automorphism_group
from .cells import (
    CellFamily, FamilyError, dual_family, require_valid, translate_classes,
)
from .graphs import BipartiteIncidenceGraph, build_bcay, halved_graphs
from .groups import group_automorphisms, translate_set
from .permgroup import Perm, PermutationGroup, compose, identity, invert, is_identity

SEARCH_STABILIZER_LIMIT = 200_000


@dataclass(frozen=True)
class CayleyVerdict:
    is_cayley: bool
    method: str
    generators: tuple[Perm, ...] = ()

    def __bool__(self) -> bool:
        return self.is_cayley


# ---------------------------------------------------------------------------
# permutations induced by the group on BCay vertices

def translation_perm(X: BipartiteIncidenceGraph, g: int) -> Perm:
    """L_g on γ ∪ β: h -> gh and B -> gB."""
    G, n = X.group, X.n_gamma
    pos = {B: n + j for j, B in enumerate(X.beta)}
    img = [G.mul(g, h) for h in range(n)]
    img += [pos[translate_set(G, g, B)] for B in X.beta]
    return tuple(img)


def is_graph_automorphism(adj: Sequence[Sequence[int]], p: Sequence[int]) -> bool:
    return all(sorted(p[w] for w in adj[v]) == sorted(adj[p[v]]) for v in range(len(adj)))


def _closure(gens: Sequence[Perm], limit: int) -> set[Perm] | None:
    """Group generated by gens, or None once it exceeds ``limit`` elements."""
    n = len(gens[0])
    e = identity(n)
    seen = {e}
    todo = [e]
    while todo:
        x = todo.pop()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    return None
                todo.append(y)
    return seen


def _is_regular(gens: Sequence[Perm], n: int) -> bool:
    H = _closure(gens, n)
    if H is None or len(H) != n:
        return False
    return len({h[0] for h in H}) == n


def _beta_position(X: BipartiteIncidenceGraph, C1: tuple[int, ...]) -> dict[int, int]:
    """For β-regular X: g -> vertex index of gC1."""
    G, n = X.group, X.n_gamma
    pos = {B: n + j for j, B in enumerate(X.beta)}
    return {g: pos[translate_set(G, g, C1)] for g in range(n)}


def swap_regular_subgroup(F: CellFamily, X: BipartiteIncidenceGraph | None = None) -> tuple[Perm, ...] | None:
    """Generators of a regular group L(G) ∪ L(G)·t with t = L_h ∘ f_φ swapping sides.

    f_φ sends g to φ(g)C1 and gC1 to φ(g)g_φ, where φ(C1) = g_φ C1^-1 for a
    group automorphism φ. The first (φ, h) with t² a left translation wins.
    """
    require_valid(F)
    if not translate_classes(F).beta_regular:
        return None
    X = X or build_bcay(F)
    G, n = F.group, F.group.order
    C1 = F.cells[0]
    dual = set(dual_family(F).cells)
    bpos = _beta_position(X, C1)
    C1inv = tuple(sorted(G.inv(c) for c in C1))
    autos = group_automorphisms(G)
    cands = [a for a in autos if a.apply_set(C1) in dual]
    cands.sort(key=lambda a: (a.order() != 2, a.images))
    L = [translation_perm(X, g) for g in range(n)]
    gen_idx = _small_generating_set(G)
    for phi in cands:
        img = phi.apply_set(C1)
        g_phi = next(x for x in range(n) if translate_set(G, x, C1inv) == img)
        f = [0] * X.n
        for g in range(n):
            f[g] = bpos[phi(g)]
            f[bpos[g]] = G.mul(phi(g), g_phi)
        f = tuple(f)
        if not is_graph_automorphism(X.adjacency, f):
            continue
        for h in range(n):
            t = compose(L[h], f)
            t2 = compose(t, t)
            x = t2[0]
            if x < n and t2 == L[x]:
                gens = tuple(L[g] for g in gen_idx) + (t,)
                if _is_regular(gens, X.n):
                    return gens
    return None


def _small_generating_set(G) -> list[int]:
    from .groups import generating_set
    return list(generating_set(G))


# ---------------------------------------------------------------------------
# regular subgroup search

def regular_subgroup_search(adj: Sequence[Sequence[int]], report: AutReport) -> tuple[Perm, ...] | None:
    """A generating set of a subgroup of Aut acting regularly, or None.

    Depth-first over subgroups H (always semiregular): extend H by an
    automorphism mapping vertex 0 to the least vertex outside H(0).
    """
    n = len(adj)
    if n == 0:
        return ()
    if report.order % n or not report.is_vertex_transitive:
        return None
    if n == 1:
        return ()
    A = PermutationGroup(n, report.generators, base=[0])
    stab_order = A.order() // n
    if stab_order > SEARCH_STABILIZER_LIMIT:
        raise RuntimeError(f"vertex stabilizer of order {stab_order} is too large to search")
    stab = list(A.stabilizer_elements(1))
    trans = A.transversal(0)
    cand_cache: dict[int, list[Perm]] = {}

    def candidates(w: int) -> list[Perm]:
        if w not in cand_cache:
            u = trans[w]
            out = []
            for s in stab:
                a = compose(u, s)
                if all(a[i] != i for i in range(n)):
                    out.append(a)
            cand_cache[w] = out
        return cand_cache[w]

    seen: set[frozenset] = set()

    def extend(elems: set[Perm], gens: list[Perm], a: Perm) -> set[Perm] | None:
        new_gens = gens + [a]
        group = set(elems)
        todo = list(elems)
        if a not in group:
            group.add(a)
            todo.append(a)
        while todo:
            x = todo.pop()
            for g in new_gens:
                y = compose(g, x)
                if y not in group:
                    if not is_identity(y) and any(y[i] == i for i in range(n)):
                        return None
                    group.add(y)
                    if len(group) > n:
                        return None
                    todo.append(y)
        if n % len(group):
            return None
        return group

    def rec(elems: set[Perm], gens: list[Perm]) -> list[Perm] | None:
        if len(elems) == n:
            return gens
        reached = {h[0] for h in elems}
        w = next(v for v in range(n) if v not in reached)
        for a in candidates(w):
            H = extend(elems, gens, a)
            if H is None:
                continue
            key = frozenset(H)
            if key in seen:
                continue
            seen.add(key)
            found = rec(H, gens + [a])
            if found is not None:
                return found
        return None

    found = rec({identity(n)}, [])
    return tuple(found) if found is not None else None


def is_cayley_graph(X, report: AutReport | None = None, family: CellFamily | None = None) -> CayleyVerdict:
    """Sabidussi test: does some subgroup of Aut(X) act regularly on V(X)?

    Cheap refutations come first (|V| must divide |Aut|, X must be vertex
    transitive); for a BCay graph with its family, the side-swapping
    construction is tried before the general search.
    """
    report = report or automorphism_group(X)
    n = X.n if hasattr(X, "n") else len(X.adjacency)
    if report.order % n:
        return CayleyVerdict(False, "divisibility")
    if not report.is_vertex_transitive:
        return CayleyVerdict(False, "not_vertex_transitive")
    if family is not None and isinstance(X, BipartiteIncidenceGraph) and family.is_valid:
        gens = swap_regular_subgroup(family, X)
        if gens is not None:
            method = "dihedral" if family.group.abelian else "swap"
            return CayleyVerdict(True, method, gens)
    gens = regular_subgroup_search(X.adjacency, report)
    if gens is None:
        return CayleyVerdict(False, "search")
    return CayleyVerdict(True, "search", gens)


def halved_translation_certificates(F: CellFamily) -> tuple[CayleyVerdict, CayleyVerdict]:
    """For β-regular F, L(G) acts regularly on both halved graphs."""
    require_valid(F)
    if not translate_classes(F).beta_regular:
        raise FamilyError("translation certificate needs a beta-regular family", {"axiom": "beta_regular"})
    X = build_bcay(F)
    Hg, Hb = halved_graphs(X)
    n = X.n_gamma
    gens = [translation_perm(X, g) for g in _small_generating_set(F.group)]
    out = []
    for H, part in ((Hg, slice(0, n)), (Hb, slice(n, X.n))):
        offset = part.start
        restricted = tuple(tuple(v - offset for v in g[part]) for g in gens)
        ok = all(is_graph_automorphism(H.adjacency, r) for r in restricted) and _is_regular(restricted, H.n)
        out.append(CayleyVerdict(ok, "translation", restricted if ok else ()))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# hypergraph normalizer

HYPERGRAPH_MAX_ORDER = 12


def hypergraph_normalizer_order(F: CellFamily) -> int:
    """|N_AH(G)|: permutations of G preserving the hyperedges {gC} and normalizing L(G).

    Computed from the side-preserving automorphisms of the incidence graph,
    without using group automorphisms of G.
    """
    G, n = F.group, F.group.order
    if n > HYPERGRAPH_MAX_ORDER:
        raise ValueError(f"hypergraph normalizer is brute force; order must be <= {HYPERGRAPH_MAX_ORDER}")
    X = build_bcay(F, allow_invalid=True)
    report = automorphism_group(X, colors=X.sides())
    restricted = [g[:n] for g in report.generators]
    AH = PermutationGroup(n, restricted, base=[0])
    L = [tuple(G.mul(g, h) for h in range(n)) for g in range(n)]
    Lset = set(L)
    gens = _small_generating_set(G)
    count = 0
    for f in AH.stabilizer_elements(1):
        finv = invert(f)
        if all(compose(f, compose(L[g], finv)) in Lset for g in gens):
            count += 1
    return n * count


# ---------------------------------------------------------------------------
# brute-force oracles

def brute_force_automorphism_count(adj: Sequence[Sequence[int]]) -> int:
    """Count adjacency-preserving bijections by backtracking (small graphs only)."""
    n = len(adj)
    if n > 12:
        raise ValueError("brute-force automorphism count is limited to 12 vertices")
    nb = [set(a) for a in adj]
    deg = [len(a) for a in adj]
    img = [-1] * n
    used = [False] * n

    def rec(v: int) -> int:
        if v == n:
            return 1
        total = 0
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            if all((u in nb[v]) == (img[u] in nb[w]) for u in range(v)):
                img[v] = w
                used[w] = True
                total += rec(v + 1)
                used[w] = False
        return total

    return rec(0)


def brute_force_isomorphic(adj1: Sequence[Sequence[int]], adj2: Sequence[Sequence[int]]) -> bool:
    """Backtracking isomorphism test (up to 20 vertices)."""
    n = len(adj1)
    if n != len(adj2):
        return False
    if n > 20:
        raise ValueError("brute-force isomorphism is limited to 20 vertices")
    if sorted(map(len, adj1)) != sorted(map(len, adj2)):
        return False
    nb1 = [set(a) for a in adj1]
    nb2 = [set(a) for a in adj2]
    # visit vertices of graph 1 in BFS order so constraints bite early
    order: list[int] = []
    seen = set()
    for s in range(n):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(nb1[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    img: dict[int, int] = {}
    used = [False] * n

    def rec(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used[w] or len(nb1[v]) != len(nb2[w]):
                continue
            if all((u in nb1[v]) == (x in nb2[w]) for u, x in img.items()):
                img[v] = w
                used[w] = True
                if rec(i + 1):
                    return True
                del img[v]
                used[w] = False
        return False

    return rec(0)


def brute_force_is_cayley(adj: Sequence[Sequence[int]]) -> bool:
    """Regular subgroup existence by enumerating all automorphisms (tiny graphs)."""
    n = len(adj)
    if n > 10:
        raise ValueError("brute-force Cayley test is limited to 10 vertices")
    auts = [p for p in permutations(range(n)) if is_graph_automorphism(adj, p)]
    fpf = [p for p in auts if not is_identity(p) and all(p[i] != i for i in range(n))]

    def rec(chosen: list[Perm]) -> bool:
        H = _closure(chosen, n) if chosen else {identity(n)}
        if H is None:
            return False
        if any(not is_identity(h) and any(h[i] == i for i in range(n)) for h in H):
            return False
        if len(H) == n:
            return True
        reached = {h[0] for h in H}
        w = next(v for v in range(n) if v not in reached)
        return any(rec(chosen + [a]) for a in fpf if a[0] == w)

    return rec([])
