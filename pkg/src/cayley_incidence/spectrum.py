"""Adjacency spectra by a cyclic Jacobi rotation eigensolver."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cells import CellFamily, require_valid
from .graphs import underlying_cayley

OFF_TOL = 1e-10
CLUSTER_TOL = 1e-6
SNAP_TOL = 1e-6
MAX_VERTICES = 128


def _round_robin(m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings for one sweep: every unordered pair of ``range(m)`` exactly once."""
    slots = list(range(m + (m % 2)))
    size = len(slots)
    rounds = []
    for _ in range(size - 1):
        ps, qs = [], []
        for i in range(size // 2):
            a, b = slots[i], slots[size - 1 - i]
            if a < m and b < m:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        slots = [slots[0]] + [slots[-1]] + slots[1:-1]
    return rounds


def jacobi_eigh(A: np.ndarray, tol: float = OFF_TOL, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors (columns) of a symmetric matrix.

    Each round applies a batch of disjoint plane rotations, so one sweep
    annihilates every off-diagonal pair once.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(A, A.T):
        raise ValueError("matrix must be symmetric")
    m = A.shape[0]
    V = np.eye(m)
    if m <= 1:
        return np.diag(A).copy(), V
    rounds = _round_robin(m)

    def off(M: np.ndarray) -> float:
        return float(np.linalg.norm(M - np.diag(np.diag(M))))

    for _ in range(max_sweeps):
        if off(A) < tol:
            break
        for p, q in rounds:
            apq = A[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (A[q, q] - A[p, p]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # A <- J^T A J with J the batch of rotations
            Ap, Aq = A[:, p].copy(), A[:, q].copy()
            A[:, p] = Ap * c - Aq * s
            A[:, q] = Ap * s + Aq * c
            Ap, Aq = A[p, :].copy(), A[q, :].copy()
            A[p, :] = c[:, None] * Ap - s[:, None] * Aq
            A[q, :] = s[:, None] * Ap + c[:, None] * Aq
            Vp, Vq = V[:, p].copy(), V[:, q].copy()
            V[:, p] = Vp * c - Vq * s
            V[:, q] = Vp * s + Vq * c
    else:
        if off(A) >= tol:
            raise RuntimeError("Jacobi iteration did not converge")
    vals = np.diag(A).copy()
    order = np.argsort(-vals, kind="stable")
    return vals[order], V[:, order]


def snap(value: float, tol: float = SNAP_TOL) -> float:
    """Round to an integer or a signed square root of an integer when within tol."""
    r = round(value)
    if abs(value - r) < tol:
        return float(r)
    sq = round(value * value)
    root = math.copysign(math.sqrt(sq), value)
    if abs(value - root) < tol:
        return root
    return value


@dataclass(frozen=True)
class SpectrumSummary:
    """Clustered eigenvalues, sorted descending, as (value, multiplicity)."""

    clusters: tuple[tuple[float, int], ...]

    @property
    def size(self) -> int:
        return sum(m for _, m in self.clusters)

    def multiset(self) -> list[float]:
        return [v for v, m in self.clusters for _ in range(m)]

    def multiplicity(self, value: float, tol: float = CLUSTER_TOL) -> int:
        return sum(m for v, m in self.clusters if abs(v - value) <= tol)

    def is_symmetric(self, tol: float = CLUSTER_TOL) -> bool:
        return all(self.multiplicity(-v, tol) == m for v, m in self.clusters)

    def matches(self, other: SpectrumSummary, tol: float = CLUSTER_TOL) -> bool:
        if len(self.clusters) != len(other.clusters):
            return False
        return all(m1 == m2 and abs(v1 - v2) <= tol
                   for (v1, m1), (v2, m2) in zip(self.clusters, other.clusters))

    def format(self) -> str:
        return ", ".join(f"{v:.6f}^{m}" for v, m in self.clusters)

    def to_json(self) -> list[list]:
        return [[v, m] for v, m in self.clusters]


def cluster(values, tol: float = CLUSTER_TOL) -> SpectrumSummary:
    vals = sorted((float(v) for v in values), reverse=True)
    groups: list[list[float]] = []
    for v in vals:
        if groups and groups[-1][-1] - v <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    clusters = []
    for g in groups:
        value = snap(sum(g) / len(g))
        clusters.append((0.0 if value == 0 else value, len(g)))
    return SpectrumSummary(tuple(clusters))


def spectrum_of_matrix(A: np.ndarray, check_residual: float = 1e-8) -> SpectrumSummary:
    vals, vecs = jacobi_eigh(A)
    if check_residual is not None and len(vals):
        res = np.linalg.norm(np.asarray(A, float) @ vecs - vecs * vals, axis=0)
        if float(res.max()) > check_residual:
            raise RuntimeError(f"eigenpair residual {res.max():.3e} exceeds {check_residual}")
    return cluster(vals)


def spectrum_direct(X) -> SpectrumSummary:
    """Adjacency spectrum of a graph with at most 128 vertices."""
    if X.n > MAX_VERTICES:
        raise ValueError(f"spectrum_direct supports at most {MAX_VERTICES} vertices")
    return spectrum_of_matrix(X.adjacency_matrix())


def spectrum_via_underlying(F: CellFamily) -> SpectrumSummary:
    """BCay spectrum predicted from the underlying Cayley graph.

    Each eigenvalue θ ≠ -ℓ of Cay(G, S(π)) with multiplicity m gives ±√(θ+ℓ)
    with multiplicity m; zero has multiplicity 2·m_t + b - n where m_t is the
    multiplicity of -ℓ and b = nℓ/k.
    """
    require_valid(F)
    n, ell, k = F.group.order, F.ell, F.k
    under = spectrum_direct(underlying_cayley(F))
    b = n * ell // k
    values: list[float] = []
    m_t = 0
    for theta, m in under.clusters:
        if abs(theta + ell) <= CLUSTER_TOL:
            m_t += m
            continue
        r = math.sqrt(max(theta + ell, 0.0))
        values += [r] * m + [-r] * m
    zeros = 2 * m_t + b - n
    values += [0.0] * zeros
    return cluster(values)
