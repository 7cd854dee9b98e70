"""Canonical labeling and automorphism groups by individualization-refinement.

The search tree is the usual one: refine a vertex coloring to an equitable
partition, pick the first smallest non-singleton cell, individualize each of
its vertices in turn and recurse. Leaves are discrete partitions, i.e.
relabelings of the graph. The canonical leaf maximizes (refinement traces
along the path, relabeled adjacency). Leaves that give the same relabeled
graph as the first or the best leaf yield automorphisms, which prune
branches whose root is in the same orbit as an explored sibling.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .permgroup import Perm, invert, compose, orbit, orbits

MAX_VERTICES = 128


@dataclass(frozen=True)
class CanonicalCertificate:
    data: bytes

    def hex(self) -> str:
        return self.data.hex()


@dataclass(frozen=True)
class AutReport:
    generators: tuple[Perm, ...]
    order: int
    vertex_orbits: tuple[tuple[int, ...], ...]
    side_preserving_index: int
    degree: int

    @property
    def is_vertex_transitive(self) -> bool:
        return len(self.vertex_orbits) == 1


@dataclass(frozen=True)
class CanonResult:
    labeling: Perm
    certificate: CanonicalCertificate
    report: AutReport


class _Search:
    def __init__(self, adj: Sequence[Sequence[int]], colors: Sequence | None):
        self.adj = [tuple(a) for a in adj]
        self.n = len(self.adj)
        if colors is None:
            self.c0 = [0] * self.n
        else:
            keys = sorted(set(colors))
            rank = {k: i for i, k in enumerate(keys)}
            self.c0 = [rank[c] for c in colors]
        self.gens: list[Perm] = []
        self.first_prefix: list[int] = []
        self.first_traces: list | None = None
        self.first_cert = None
        self.first_colors = None
        self.best_traces: list | None = None
        self.best_cert = None
        self.best_colors = None
        self.first_cells: list[tuple[int, ...]] = []

    # -- partitions -------------------------------------------------------
    def refine(self, c: list[int]) -> tuple[list[int], tuple]:
        adj = self.adj
        ncol = len(set(c))
        while True:
            sigs = [(c[v], tuple(sorted(c[w] for w in adj[v]))) for v in range(self.n)]
            distinct = sorted(set(sigs))
            if len(distinct) == ncol:
                return c, tuple(distinct)
            rank = {s: i for i, s in enumerate(distinct)}
            c = [rank[s] for s in sigs]
            ncol = len(distinct)

    @staticmethod
    def individualize(c: list[int], v: int) -> list[int]:
        cv = c[v]
        return [x if x < cv or u == v else x + 1 for u, x in enumerate(c)]

    def target_cell(self, c: list[int]) -> tuple[int, ...] | None:
        cells: dict[int, list[int]] = {}
        for v, x in enumerate(c):
            cells.setdefault(x, []).append(v)
        best = None
        for x in sorted(cells):
            cell = cells[x]
            if len(cell) > 1 and (best is None or len(cell) < len(best)):
                best = cell
        return tuple(best) if best is not None else None

    def leaf_cert(self, c: list[int]) -> tuple:
        inv = [0] * self.n
        for v, p in enumerate(c):
            inv[p] = v
        return tuple(tuple(sorted(c[w] for w in self.adj[inv[p]])) for p in range(self.n))

    # -- search -----------------------------------------------------------
    def run(self) -> None:
        c, tr = self.refine(list(self.c0))
        self.node(c, [tr], [], True, True)

    def _add_automorphism(self, ca: list[int], cb: list[int]) -> None:
        # vertex at position p in leaf a maps to vertex at position p in leaf b
        inv_b = [0] * self.n
        for v, p in enumerate(cb):
            inv_b[p] = v
        g = tuple(inv_b[ca[v]] for v in range(self.n))
        if g not in self.gens and any(i != x for i, x in enumerate(g)):
            self.gens.append(g)

    def leaf(self, c, traces, prefix, first_eq) -> int | None:
        cert = self.leaf_cert(c)
        if self.first_cert is None:
            self.first_cert, self.first_colors, self.first_traces = cert, c, list(traces)
            self.best_cert, self.best_colors, self.best_traces = cert, c, list(traces)
            self.first_prefix = list(prefix)
            return None
        if first_eq and cert == self.first_cert:
            self._add_automorphism(self.first_colors, c)
            j = 0
            while j < len(prefix) and prefix[j] == self.first_prefix[j]:
                j += 1
            return j
        mine, theirs = (traces, cert), (self.best_traces, self.best_cert)
        if mine > theirs:
            self.best_cert, self.best_colors, self.best_traces = cert, c, list(traces)
        elif mine == theirs:
            self._add_automorphism(self.best_colors, c)
        return None

    def node(self, c, traces, prefix, on_first, first_eq) -> int | None:
        level = len(prefix)
        cell = self.target_cell(c)
        if cell is None:
            return self.leaf(c, traces, prefix, first_eq)
        if on_first:
            self.first_cells.append(cell)
        explored: list[int] = []
        ngens_seen, fixing = -1, []
        for i, v in enumerate(cell):
            if explored:
                if ngens_seen != len(self.gens):
                    ngens_seen = len(self.gens)
                    fixing = [g for g in self.gens if all(g[p] == p for p in prefix)]
                if fixing and any(w in explored for w in orbit(v, fixing)):
                    continue
            cc, tr = self.refine(self.individualize(c, v))
            ctraces = traces + [tr]
            child_first = on_first and i == 0
            cfirst = first_eq and (child_first or
                                   (self.first_traces is not None
                                    and len(self.first_traces) > level + 1
                                    and self.first_traces[level + 1] == tr))
            if not child_first and not cfirst and self.best_traces is not None:
                if ctraces < self.best_traces[:len(ctraces)]:
                    explored.append(v)
                    continue
            jump = self.node(cc, ctraces, prefix + [v], child_first, cfirst)
            explored.append(v)
            if jump is not None and jump < level:
                return jump
        return None

    # -- results ----------------------------------------------------------
    def order(self) -> int:
        out = 1
        for i, v in enumerate(self.first_prefix):
            fix = [g for g in self.gens if all(g[p] == p for p in self.first_prefix[:i])]
            out *= len(orbit(v, fix))
        return out

    def labeling(self) -> Perm:
        return tuple(self.best_colors) if self.best_colors is not None else tuple(range(self.n))


def _adjacency(X) -> Sequence[Sequence[int]]:
    return X.adjacency if hasattr(X, "adjacency") else X


def _sides(X) -> list[int] | None:
    """Bipartition used for the side-preserving index, if the graph is bipartite."""
    if hasattr(X, "sides"):
        return list(X.sides())
    adj = _adjacency(X)
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
                    return None
    return side


def _certificate_bytes(adj, labeling: Perm, c0: list[int] | None) -> bytes:
    n = len(adj)
    M = np.zeros((n, n), dtype=np.uint8)
    for v, nb in enumerate(adj):
        for w in nb:
            M[labeling[v], labeling[w]] = 1
    head = n.to_bytes(4, "big")
    if c0 is not None:
        cols = [0] * n
        for v, p in enumerate(labeling):
            cols[p] = c0[v]
        head += bytes([1]) + np.asarray(cols, dtype=">u4").tobytes()
    return head + np.packbits(M[np.triu_indices(n, 1)]).tobytes()


def canonical_form(X, colors: Sequence | None = None) -> CanonResult:
    """Canonical labeling, certificate and automorphism group of a graph.

    ``colors`` optionally restricts to color-preserving relabelings.
    """
    adj = _adjacency(X)
    n = len(adj)
    if n > MAX_VERTICES:
        raise ValueError(f"canonical labeling supports at most {MAX_VERTICES} vertices")
    s = _Search(adj, colors)
    if n:
        s.run()
    lab = s.labeling()
    cert = CanonicalCertificate(_certificate_bytes(adj, lab, s.c0 if colors is not None else None))
    gens = tuple(s.gens)
    side = _sides(X)
    index = 1
    if side is not None and any(side[g[v]] != side[v] for g in gens for v in range(n)):
        index = 2
    orbs = tuple(tuple(o) for o in orbits(n, gens))
    report = AutReport(gens, s.order() if n else 1, orbs, index, n)
    return CanonResult(lab, cert, report)


def canonical_certificate(X, colors: Sequence | None = None) -> CanonicalCertificate:
    return canonical_form(X, colors).certificate


def automorphism_group(X, colors: Sequence | None = None) -> AutReport:
    return canonical_form(X, colors).report


def isomorphism(X, Y) -> Perm | None:
    """A vertex map X -> Y preserving adjacency, or None."""
    a, b = canonical_form(X), canonical_form(Y)
    if a.certificate != b.certificate:
        return None
    return compose(invert(b.labeling), a.labeling)


def is_isomorphic(X, Y) -> bool:
    return canonical_certificate(X) == canonical_certificate(Y)
