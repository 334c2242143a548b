"""Seeded Erdős–Rényi, Barabási–Albert and Watts–Strogatz generators.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``, so a
``GeneratorSpec`` fully determines its graph.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .graph import Graph, from_edges

Model = Literal["ER", "BA", "WS"]


@dataclass(frozen=True)
class GeneratorSpec:
    model: Model
    n: int
    seed: int
    er_p: float | None = None
    ba_m: int | None = None
    ws_k: int | None = None
    ws_p: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "model", str(self.model).upper())
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.model == "ER":
            if self.er_p is None or not 0.0 <= self.er_p <= 1.0:
                raise ValueError("ER needs 0 <= er_p <= 1")
        elif self.model == "BA":
            if self.ba_m is None or not 1 <= self.ba_m < self.n:
                raise ValueError("BA needs 1 <= ba_m < n")
        elif self.model == "WS":
            if self.ws_k is None or self.ws_p is None:
                raise ValueError("WS needs ws_k and ws_p")
            k = self.ws_k
            if k % 2:
                warnings.warn(f"odd ring-lattice degree k={k} rounded down to {k - 1}", stacklevel=3)
                object.__setattr__(self, "ws_k", k - 1)
            if not 2 <= self.ws_k < self.n:
                raise ValueError("WS needs even 2 <= ws_k < n")
            if not 0.0 <= self.ws_p <= 1.0:
                raise ValueError("WS needs 0 <= ws_p <= 1")
        else:
            raise ValueError(f"unknown model {self.model!r}; expected ER, BA or WS")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def params(self) -> dict:
        if self.model == "ER":
            return {"p": self.er_p}
        if self.model == "BA":
            return {"m": self.ba_m}
        return {"k": self.ws_k, "p": self.ws_p}


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p) by geometric skipping over the ``n(n-1)/2`` pairs in row-major order."""
    total = n * (n - 1) // 2
    if p <= 0.0 or total == 0:
        return from_edges(n, [])
    if p >= 1.0:
        idx = np.arange(total, dtype=np.int64)
    else:
        chunks = []
        pos = -1
        batch = max(1024, int(total * p * 1.1) + 64)
        while pos < total:
            steps = np.cumsum(rng.geometric(p, size=batch).astype(np.int64)) + pos
            chunks.append(steps)
            pos = int(steps[-1])
        idx = np.concatenate(chunks)
        idx = idx[idx < total]
    # pair index -> (i, j), i < j, where row i starts at i*n - i*(i+1)/2
    row_start = lambda r: r * n - r * (r + 1) // 2  # noqa: E731
    i = np.floor((2 * n - 1 - np.sqrt((2 * n - 1) ** 2 - 8 * idx.astype(np.float64))) / 2).astype(np.int64)
    # float rounding can land one row off
    i = np.where(row_start(i) > idx, i - 1, i)
    i = np.where(row_start(i + 1) <= idx, i + 1, i)
    j = idx - row_start(i) + i + 1
    return from_edges(n, np.column_stack([i, j]))


def barabasi_albert(n: int, m: int, rng: np.random.Generator) -> Graph:
    """Preferential attachment grown from a clique on ``m + 1`` vertices.

    Each new vertex picks ``m`` distinct targets with probability proportional to
    their current degree; repeated picks are redrawn.
    """
    seed_nodes = m + 1
    edges = [(u, v) for u in range(seed_nodes) for v in range(u + 1, seed_nodes)]
    # every edge endpoint once: uniform draws from this list are degree-proportional
    ends = np.empty(2 * (len(edges) + m * (n - seed_nodes)), dtype=np.int64)
    ends[: 2 * len(edges)] = np.asarray(edges, dtype=np.int64).ravel()
    size = 2 * len(edges)
    for v in range(seed_nodes, n):
        chosen: list[int] = []
        while len(chosen) < m:
            t = int(ends[rng.integers(size)])
            if t not in chosen:
                chosen.append(t)
        for t in chosen:
            edges.append((t, v))
            ends[size] = t
            ends[size + 1] = v
            size += 2
    return from_edges(n, edges)


def watts_strogatz(n: int, k: int, p: float, rng: np.random.Generator) -> Graph:
    """Ring lattice with ``k/2`` neighbors per side, each lattice edge rewired once.

    Edges ``(i, i + s)`` are visited for ``s = 1..k/2`` (outer) and ``i = 0..n-1``
    (inner). With probability ``p`` the far endpoint is replaced by a uniform
    vertex that is neither ``i`` nor already adjacent to ``i``.
    """
    adj = [set() for _ in range(n)]
    half = k // 2
    for s in range(1, half + 1):
        for i in range(n):
            j = (i + s) % n
            adj[i].add(j)
            adj[j].add(i)
    if p > 0.0:
        for s in range(1, half + 1):
            flips = rng.random(n) < p
            for i in np.flatnonzero(flips):
                i = int(i)
                j = (i + s) % n
                if j not in adj[i] or len(adj[i]) >= n - 1:
                    continue
                while True:
                    w = int(rng.integers(n))
                    if w != i and w not in adj[i]:
                        break
                adj[i].discard(j)
                adj[j].discard(i)
                adj[i].add(w)
                adj[w].add(i)
    edges = [(i, j) for i in range(n) for j in adj[i] if i < j]
    return from_edges(n, edges)


def generate(spec: GeneratorSpec) -> Graph:
    rng = make_rng(spec.seed)
    if spec.model == "ER":
        return erdos_renyi(spec.n, spec.er_p, rng)
    if spec.model == "BA":
        return barabasi_albert(spec.n, spec.ba_m, rng)
    return watts_strogatz(spec.n, spec.ws_k, spec.ws_p, rng)
