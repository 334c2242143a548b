"""Ksi-centrality and its normalized variants.

For a vertex ``i`` with neighborhood ``N(i)`` the boundary edge count is the
number of edges with one endpoint in ``N(i)`` and the other outside it (``i``
itself is outside). Each neighbor ``j`` contributes ``d_j - |N(j) & N(i)|``
such edges, which the fast path evaluates by merging sorted neighbor lists.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

from .graph import Graph, atomic_write_text

DENSE_ORACLE_MAX_N = 256


@dataclass(frozen=True, eq=False)
class KsiScores:
    boundary_edges: np.ndarray  # int64
    degrees: np.ndarray  # int64
    ksi: np.ndarray
    ksi_norm: np.ndarray

    @property
    def n(self) -> int:
        return len(self.ksi)


@njit(nogil=True, cache=True)
def _boundary_kernel(indptr, indices, lo, hi, out):
    for i in range(lo, hi):
        a0 = indptr[i]
        a1 = indptr[i + 1]
        total = 0
        for p in range(a0, a1):
            j = indices[p]
            b0 = indptr[j]
            b1 = indptr[j + 1]
            common = 0
            x = a0
            y = b0
            while x < a1 and y < b1:
                u = indices[x]
                v = indices[y]
                if u == v:
                    common += 1
                    x += 1
                    y += 1
                elif u < v:
                    x += 1
                else:
                    y += 1
            total += (b1 - b0) - common
        out[i] = total


def resolve_threads(threads: int | None = None) -> int:
    """Worker count: explicit argument, else ``KSI_THREADS``, where 0 means auto."""
    if threads is None:
        threads = int(os.environ.get("KSI_THREADS", "0") or 0)
    if threads < 0:
        raise ValueError("thread count must be >= 0")
    if threads == 0:
        threads = os.cpu_count() or 1
    return threads


def boundary_edge_counts(g: Graph, threads: int | None = None) -> np.ndarray:
    """Boundary edge counts for every vertex as an int64 array.

    Vertices are split into contiguous blocks of roughly equal adjacency volume,
    one per worker. Each worker writes only its own slots, so the result does not
    depend on the partitioning.
    """
    n = g.n
    out = np.zeros(n, dtype=np.int64)
    if n == 0:
        return out
    workers = min(resolve_threads(threads), n)
    if workers == 1:
        _boundary_kernel(g.indptr, g.indices, 0, n, out)
        return out
    # balance on cumulative degree (+1 so isolated vertices still count)
    load = g.indptr + np.arange(n + 1)
    cuts = np.searchsorted(load, np.linspace(0, load[-1], workers + 1)[1:-1])
    bounds = np.concatenate([[0], cuts, [n]]).astype(np.int64)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_boundary_kernel, g.indptr, g.indices, int(lo), int(hi), out)
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo
        ]
        for f in futures:
            f.result()
    return out


def boundary_edge_count(g: Graph, i: int) -> int:
    """Number of edges between ``N(i)`` and the rest of the graph, for one vertex."""
    nb = g.neighbors(i)
    total = 0
    for j in nb:
        nj = g.neighbors(int(j))
        total += len(nj) - len(np.intersect1d(nb, nj, assume_unique=True))
    return int(total)


def scores_from_counts(boundary: np.ndarray, degrees: np.ndarray) -> KsiScores:
    """Apply the ratio definitions, including the isolated-vertex conventions."""
    boundary = np.asarray(boundary, dtype=np.int64)
    degrees = np.asarray(degrees, dtype=np.int64)
    n = len(degrees)
    assert n == 0 or degrees.max() < n, "simple graph has d_i <= n - 1"
    ksi = np.ones(n, dtype=np.float64)
    ksi_norm = np.full(n, 1.0 / n if n else 0.0)
    has = degrees > 0
    b = boundary[has].astype(np.float64)
    d = degrees[has].astype(np.float64)
    ksi[has] = b / d
    ksi_norm[has] = b / (d * (n - d))
    return KsiScores(boundary, degrees, ksi, ksi_norm)


def ksi_all(g: Graph, threads: int | None = None) -> KsiScores:
    """Ksi and normalized ksi for every vertex of ``g``.

    Isolated vertices get ksi 1 and normalized ksi ``1/n``.
    """
    return scores_from_counts(boundary_edge_counts(g, threads), g.degrees)


def average_normalized_ksi(scores: KsiScores) -> float:
    if scores.n == 0:
        raise ValueError("average of an empty score set")
    return float(np.mean(scores.ksi_norm))


def ksi_all_dense_oracle(g: Graph, max_n: int = DENSE_ORACLE_MAX_N) -> KsiScores:
    """Reference scores from dense integer matrix products.

    The numerator is ``diag(A @ A @ (J - A))`` with ``J`` the all-ones matrix and
    the denominator ``diag(A @ A)``, i.e. the triple sum over ``a_ij a_jk (1 - a_ki)``.
    Intended for testing only; refuses graphs larger than ``max_n``.
    """
    n = g.n
    if n > max_n:
        raise ValueError(f"dense oracle limited to n <= {max_n}, got n={n}")
    a = np.zeros((n, n), dtype=np.int64)
    e = g.edges()
    a[e[:, 0], e[:, 1]] = 1
    a[e[:, 1], e[:, 0]] = 1
    a2 = a @ a
    numer = np.diag(a2 @ (np.ones_like(a) - a)).copy()
    denom = np.diag(a2).copy()
    return scores_from_counts(numer, denom)


def scores_to_csv(g: Graph, scores: KsiScores) -> str:
    rows = ["vertex,label,degree,boundary_edges,ksi,ksi_norm"]
    for i in range(scores.n):
        rows.append(
            f"{i},{_csv_field(g.labels[i])},{scores.degrees[i]},{scores.boundary_edges[i]},"
            f"{scores.ksi[i]:.10g},{scores.ksi_norm[i]:.10g}"
        )
    return "\n".join(rows) + "\n"


def write_scores_csv(g: Graph, scores: KsiScores, path) -> None:
    atomic_write_text(path, scores_to_csv(g, scores))


def summary(g: Graph, scores: KsiScores) -> dict:
    return {
        "n": g.n,
        "m": g.m,
        "average_normalized_ksi": average_normalized_ksi(scores),
        "inverse_n": 1.0 / g.n,
        "ksi_min": float(scores.ksi.min()),
        "ksi_max": float(scores.ksi.max()),
        "isolated_vertices": int(np.sum(scores.degrees == 0)),
    }


def _csv_field(s: str) -> str:
    if any(c in s for c in ',"\n'):
        return '"' + s.replace('"', '""') + '"'
    return s
