"""Simple graphs, Cayley graphs and bipartite Cayley incidence graphs."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cells import CellFamily, FamilyError, connection_set, require_valid
from .groups import FiniteGroup, GroupError, inverse_set, translate_set

INF = float("inf")


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected loop-free graph on vertices ``0..n-1`` with display labels."""

    labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.labels) != len(self.adjacency):
            raise ValueError("labels and adjacency differ in length")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise ValueError(f"loop at vertex {v}")
            for w in nbrs:
                if v not in self.adjacency[w]:
                    raise ValueError(f"edge {v}-{w} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> SimpleGraph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for a, b in edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        return cls(labels, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def edges(self) -> list[tuple[int, int]]:
        return [(v, w) for v, nb in enumerate(self.adjacency) for w in nb if v < w]

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for v, nb in enumerate(self.adjacency):
            A[v, list(nb)] = 1
        return A

    def relabel(self, perm: Sequence[int]) -> SimpleGraph:
        """Graph with vertex v renamed ``perm[v]``."""
        n = self.n
        inv = [0] * n
        for v, p in enumerate(perm):
            inv[p] = v
        adj = tuple(tuple(sorted(perm[w] for w in self.adjacency[inv[u]])) for u in range(n))
        return SimpleGraph(tuple(self.labels[inv[u]] for u in range(n)), adj)

    def is_connected(self) -> bool:
        return self.n == 0 or len(_bfs_dist(self.adjacency, 0)) == self.n

    def to_json(self) -> dict:
        return {"vertices": list(self.labels), "edges": [list(e) for e in self.edges()]}

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {_dot_id(name)} {{"]
        for v, lab in enumerate(self.labels):
            lines.append(f'  {v} [label="{lab}"];')
        lines += [f"  {a} -- {b};" for a, b in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class BipartiteIncidenceGraph:
    """Incidence graph with γ = group elements (vertices ``0..n-1``) and
    β = distinct cosets ``gC`` (vertices ``n..n+b-1``)."""

    group: FiniteGroup
    gamma: tuple[str, ...]
    beta: tuple[tuple[int, ...], ...]
    beta_class: tuple[int, ...]
    adjacency: tuple[tuple[int, ...], ...]
    ell: int | None
    k: int | None

    @property
    def n_gamma(self) -> int:
        return len(self.gamma)

    @property
    def n_beta(self) -> int:
        return len(self.beta)

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def beta_labels(self) -> list[str]:
        G = self.group
        return ["{" + ",".join(G.labels[g] for g in B) + "}" for B in self.beta]

    def as_simple(self) -> SimpleGraph:
        return SimpleGraph(tuple(self.gamma) + tuple(self.beta_labels()), self.adjacency)

    def biadjacency(self) -> np.ndarray:
        """The γ × β incidence matrix N."""
        N = np.zeros((self.n_gamma, self.n_beta), dtype=np.int64)
        for j, B in enumerate(self.beta):
            N[list(B), j] = 1
        return N

    def adjacency_matrix(self) -> np.ndarray:
        return self.as_simple().adjacency_matrix()

    def sides(self) -> tuple[int, ...]:
        return (0,) * self.n_gamma + (1,) * self.n_beta

    def to_json(self) -> dict:
        return {
            "gamma": list(self.gamma),
            "beta": [list(B) for B in self.beta],
            "edges": [[g, j] for j, B in enumerate(self.beta) for g in B],
        }

    def to_dot(self, name: str = "BCay") -> str:
        lines = [f"graph {_dot_id(name)} {{"]
        for v, lab in enumerate(self.gamma):
            lines.append(f'  g{v} [label="{lab}", shape=circle];')
        for j, lab in enumerate(self.beta_labels()):
            lines.append(f'  b{j} [label="{lab}", shape=box];')
        for j, B in enumerate(self.beta):
            lines += [f"  g{g} -- b{j};" for g in B]
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_id(name: str) -> str:
    return '"' + name.replace('"', "'") + '"'


# ---------------------------------------------------------------------------
# builders

def build_bcay(F: CellFamily, allow_invalid: bool = False) -> BipartiteIncidenceGraph:
    """BCay(G, π): γ = G, β = the distinct sets gC, with g ~ B iff g ∈ B.

    ``allow_invalid`` builds the same incidence structure for families that
    fail the bcay axioms (e.g. to exhibit what goes wrong).
    """
    if not allow_invalid:
        require_valid(F)
    G = F.group
    n = G.order
    cosets: dict[tuple[int, ...], int] = {}
    origin: list[int] = []
    for ci, C in enumerate(F.cells):
        for g in range(n):
            B = translate_set(G, g, C)
            if B not in cosets:
                cosets[B] = len(cosets)
                origin.append(ci)
    beta = sorted(cosets, key=lambda B: (origin[cosets[B]], B))
    # group cells whose coset sets overlap into classes (translate classes for T-axiom input)
    parent = list(range(len(F.cells)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cell_index = {C: i for i, C in enumerate(F.cells)}
    for ci, C in enumerate(F.cells):
        for s in C:
            D = translate_set(G, G.inv(s), C)
            if D in cell_index:
                parent[find(cell_index[D])] = find(ci)
    roots = sorted({find(i) for i in range(len(F.cells))})
    root_id = {r: i for i, r in enumerate(roots)}
    beta_class = tuple(root_id[find(origin[cosets[B]])] for B in beta)

    adj: list[list[int]] = [[] for _ in range(n + len(beta))]
    for j, B in enumerate(beta):
        for g in B:
            adj[g].append(n + j)
            adj[n + j].append(g)
    degs_g = {len(adj[g]) for g in range(n)}
    return BipartiteIncidenceGraph(
        group=G,
        gamma=tuple(G.labels),
        beta=tuple(beta),
        beta_class=beta_class,
        adjacency=tuple(tuple(sorted(a)) for a in adj),
        ell=degs_g.pop() if len(degs_g) == 1 else None,
        k=F.k,
    )


def build_cayley(G: FiniteGroup, S: Iterable[int]) -> SimpleGraph:
    """Cay(G, S): g ~ h iff h^-1 g ∈ S."""
    S = tuple(sorted(set(S)))
    if 0 in S:
        raise GroupError("connection set contains the identity")
    if any(not 0 <= s < G.order for s in S):
        raise GroupError("connection set has elements outside the group")
    if inverse_set(G, S) != S:
        raise GroupError("connection set is not inverse-closed")
    edges = [(g, G.mul(g, s)) for g in range(G.order) for s in S]
    return SimpleGraph.from_edges(G.order, edges, G.labels)


def underlying_cayley(F: CellFamily) -> SimpleGraph:
    return build_cayley(F.group, connection_set(F))


def build_bicayley(G: FiniteGroup, R: Iterable[int], L: Iterable[int], T: Iterable[int]) -> SimpleGraph:
    """BiCay(G, R, L, T) on G x {0, 1}: (g,0)~(gr,0) for r∈R, (g,1)~(gl,1) for l∈L,
    (g,0)~(gt,1) for t∈T. Vertex (g, i) has index ``g + i*n``."""
    n = G.order
    R, L, T = (tuple(sorted(set(x))) for x in (R, L, T))
    for name, X in (("R", R), ("L", L)):
        if 0 in X or inverse_set(G, X) != X:
            raise GroupError(f"{name} must be inverse-closed and avoid the identity")
    edges = []
    for g in range(n):
        edges += [(g, G.mul(g, s)) for s in R]
        edges += [(g + n, G.mul(g, s) + n) for s in L]
        edges += [(g, G.mul(g, s) + n) for s in T]
    labels = [f"({x},0)" for x in G.labels] + [f"({x},1)" for x in G.labels]
    return SimpleGraph.from_edges(2 * n, edges, labels)


# ---------------------------------------------------------------------------
# metrics

def _adj(X) -> tuple[tuple[int, ...], ...]:
    return X.adjacency


def _bfs_dist(adj, src: int) -> dict[int, int]:
    dist = {src: 0}
    q = deque([src])
    while q:
        v = q.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def girth(X) -> float:
    """Shortest cycle length (``inf`` for forests) by BFS from each vertex."""
    adj = _adj(X)
    n = len(adj)
    best = INF
    for s in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    q.append(w)
                elif w != parent[v]:
                    best = min(best, dist[v] + dist[w] + 1)
    return int(best) if best != INF else INF


def halved_graphs(X: BipartiteIncidenceGraph) -> tuple[SimpleGraph, SimpleGraph]:
    """Distance-two graphs H_γ on γ and H_β on β."""
    n, adj = X.n_gamma, X.adjacency
    eg, eb = set(), set()
    for m in range(X.n):
        nb = adj[m]
        target = eb if m < n else eg
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                target.add((a, b) if a < b else (b, a))
    Hg = SimpleGraph.from_edges(n, eg, X.gamma)
    Hb = SimpleGraph.from_edges(X.n_beta, [(a - n, b - n) for a, b in eb], X.beta_labels())
    return Hg, Hb


def biadjacency_identity_check(X: BipartiteIncidenceGraph, F: CellFamily | None = None) -> bool:
    """True iff N N^T = A(Cay(G, S(π))) + ℓ I entrywise.

    S(π) is read off the cosets through the identity when F is not given.
    """
    G = X.group
    if F is not None:
        S = connection_set(F)
        ell = F.ell
    else:
        through = [B for B in X.beta if 0 in B]
        S = sorted({g for B in through for g in B} - {0})
        ell = len(through)
    try:
        A = build_cayley(G, S).adjacency_matrix()
    except GroupError:
        return False
    N = X.biadjacency()
    return bool(np.array_equal(N @ N.T, A + ell * np.eye(G.order, dtype=np.int64)))


def biadjacency_mismatches(X: BipartiteIncidenceGraph, F: CellFamily) -> list[tuple[int, int, int, int]]:
    """Entries (g, h, (NN^T)_gh, (A+ℓI)_gh) where the identity fails."""
    G = X.group
    A = build_cayley(G, connection_set(F)).adjacency_matrix() + F.ell * np.eye(G.order, dtype=np.int64)
    N = X.biadjacency()
    M = N @ N.T
    bad = np.argwhere(M != A)
    return [(int(i), int(j), int(M[i, j]), int(A[i, j])) for i, j in bad]


def is_bipartite(X) -> bool:
    adj = _adj(X)
    side = [-1] * len(adj)
    for s in range(len(adj)):
        if side[s] >= 0:
            continue
        side[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for w in adj[v]:
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    q.append(w)
                elif side[w] == side[v]:
                    return False
    return True


def graph_to_json_text(X) -> str:
    return json.dumps(X.to_json())


__all__ = [
    "SimpleGraph", "BipartiteIncidenceGraph", "build_bcay", "build_cayley", "underlying_cayley",
    "build_bicayley", "girth", "halved_graphs", "biadjacency_identity_check",
    "biadjacency_mismatches", "is_bipartite", "FamilyError", "INF",
]
