"""Immutable undirected simple graph in CSR form, edge-list I/O and LCC extraction."""

from __future__ import annotations

import gzip
import io
import os
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

COMMENT_PREFIXES = ("#", "%")
_SPLIT = re.compile(r"\s*,\s*|\s+")


class GraphError(ValueError):
    """Base class for graph construction and ingestion errors."""


class EdgeListParseError(GraphError):
    def __init__(self, path, lineno: int, line: str):
        self.path = path
        self.lineno = lineno
        self.line = line
        super().__init__(f"{path}:{lineno}: expected at least 2 tokens, got {line.strip()!r}")


class EmptyGraphError(GraphError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph with sorted neighbor lists.

    ``indptr``/``indices`` follow the usual CSR layout: the neighbors of ``i``
    are ``indices[indptr[i]:indptr[i + 1]]``, strictly increasing.
    ``labels`` holds the original vertex labels (``str(i)`` for generated graphs).
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple = field(default=())

    def __post_init__(self):
        indptr = np.ascontiguousarray(self.indptr, dtype=np.int64)
        indices = np.ascontiguousarray(self.indices, dtype=np.int64)
        indptr.setflags(write=False)
        indices.setflags(write=False)
        object.__setattr__(self, "indptr", indptr)
        object.__setattr__(self, "indices", indices)
        n = len(indptr) - 1
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(n)))
        elif len(self.labels) != n:
            raise GraphError(f"got {len(self.labels)} labels for {n} vertices")
        else:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, i: int) -> int:
        self._check_vertex(i)
        return int(self.indptr[i + 1] - self.indptr[i])

    def neighbors(self, i: int) -> np.ndarray:
        self._check_vertex(i)
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        nb = self.neighbors(i)
        k = np.searchsorted(nb, j)
        return bool(k < len(nb) and nb[k] == j)

    def edges(self) -> np.ndarray:
        """Array of shape (m, 2) with each undirected edge once, ``u < v``, sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def to_scipy(self) -> csr_matrix:
        data = np.ones(len(self.indices), dtype=np.int64)
        return csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def validate(self) -> None:
        """Full scan of the structural invariants; raises GraphError on violation."""
        n = self.n
        if self.indptr[0] != 0 or np.any(np.diff(self.indptr) < 0):
            raise GraphError("indptr must start at 0 and be nondecreasing")
        if len(self.indices) and (self.indices.min() < 0 or self.indices.max() >= n):
            raise GraphError("neighbor id out of range")
        src = np.repeat(np.arange(n, dtype=np.int64), self.degrees)
        if np.any(src == self.indices):
            raise GraphError("self-loop present")
        same_row = src[1:] == src[:-1]
        if np.any(self.indices[1:][same_row] <= self.indices[:-1][same_row]):
            raise GraphError("neighbor lists must be strictly increasing")
        fwd = src * n + self.indices
        rev = np.sort(self.indices * n + src)
        if not np.array_equal(fwd, rev):
            raise GraphError("adjacency is not symmetric")
        if int(self.degrees.sum()) != 2 * self.m or len(self.indices) % 2:
            raise GraphError("degree sum must equal 2m")

    def _check_vertex(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"vertex {i} out of range for graph with {self.n} vertices")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and self.labels == other.labels
        )

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def from_edges(
    n: int,
    edges: Iterable[Sequence[int]] | np.ndarray,
    labels: Sequence | None = None,
    drop_self_loops: bool = True,
) -> Graph:
    """Build a simple undirected graph on ``n`` vertices from an edge array.

    Duplicate and reversed edges collapse to one undirected edge. Self-loops are
    removed unless ``drop_self_loops`` is False, in which case they raise.
    """
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if len(e) and (e.min() < 0 or e.max() >= n):
        raise GraphError("edge endpoint out of range")
    loops = e[:, 0] == e[:, 1]
    if loops.any():
        if not drop_self_loops:
            raise GraphError("self-loops are not allowed in a simple graph")
        e = e[~loops]
    both = np.concatenate([e, e[:, ::-1]])
    keys = np.unique(both[:, 0] * n + both[:, 1]) if n else np.empty(0, np.int64)
    src, dst = np.divmod(keys, n) if n else (keys, keys)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return Graph(indptr, dst, tuple(labels) if labels is not None else ())


def _open_text(path: Path):
    if path.suffix == ".gz":
        return io.TextIOWrapper(gzip.open(path, "rb"), encoding="utf-8")
    return open(path, encoding="utf-8")


def load_edge_list(path, symmetrize: bool = True, drop_self_loops: bool = True) -> Graph:
    """Read a whitespace- or comma-separated edge list.

    Lines starting with ``#`` or ``%`` and blank lines are skipped. Tokens past the
    second (weights, timestamps) are ignored. Labels are mapped to dense ids in
    order of first appearance. Files ending in ``.gz`` are decompressed.

    The result is always undirected; ``symmetrize`` is accepted for API symmetry
    and must be True since directed semantics are not supported.
    """
    if not symmetrize:
        raise GraphError("directed graphs are not supported; symmetrize must be True")
    path = Path(path)
    ids: dict[str, int] = {}
    src: list[int] = []
    dst: list[int] = []
    with _open_text(path) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith(COMMENT_PREFIXES):
                continue
            tok = _SPLIT.split(s)
            if len(tok) < 2 or not tok[0] or not tok[1]:
                raise EdgeListParseError(path, lineno, line)
            u = ids.setdefault(tok[0], len(ids))
            v = ids.setdefault(tok[1], len(ids))
            src.append(u)
            dst.append(v)
    labels = list(ids)
    g = from_edges(len(labels), np.column_stack([src, dst]) if src else [], labels, True)
    if not drop_self_loops and any(a == b for a, b in zip(src, dst)):
        raise GraphError(f"{path}: self-loops present and drop_self_loops=False")
    if g.m == 0:
        raise EmptyGraphError(f"{path}: empty graph (no edges after normalization)")
    return g


def write_edge_list(g: Graph, path, use_labels: bool = True) -> None:
    """Write ``g`` as a space-separated edge list, one undirected edge per line."""
    e = g.edges()
    lines = [f"# undirected simple graph n={g.n} m={g.m}\n"]
    if use_labels:
        lab = g.labels
        lines.extend(f"{lab[u]} {lab[v]}\n" for u, v in e)
    else:
        lines.extend(f"{u} {v}\n" for u, v in e)
    atomic_write_text(path, "".join(lines))


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def induced_subgraph(g: Graph, vertices: np.ndarray) -> Graph:
    """Subgraph induced on ``vertices`` (sorted ascending), relabeled densely."""
    vertices = np.sort(np.asarray(vertices, dtype=np.int64))
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[vertices] = np.arange(len(vertices))
    e = g.edges()
    keep = (remap[e[:, 0]] >= 0) & (remap[e[:, 1]] >= 0)
    labels = [g.labels[v] for v in vertices]
    return from_edges(len(vertices), remap[e[keep]], labels)


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest connected component.

    Ties go to the component containing the smallest vertex id. Vertex order is
    preserved, so a connected graph maps to itself.
    """
    if g.n == 0:
        return g
    ncomp, comp = connected_components(g.to_scipy(), directed=False)
    if ncomp == 1:
        return g
    sizes = np.bincount(comp, minlength=ncomp)
    first_vertex = np.full(ncomp, g.n, dtype=np.int64)
    np.minimum.at(first_vertex, comp, np.arange(g.n))
    best = max(range(ncomp), key=lambda c: (sizes[c], -first_vertex[c]))
    return induced_subgraph(g, np.flatnonzero(comp == best))


def read_manifest(path=None) -> list[dict]:
    """Parse the bundled dataset manifest (tab-separated name, url, node count).

    The node count is ``None`` when it is not recorded.
    """
    if path is None:
        path = Path(__file__).with_name("data") / "datasets.tsv"
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, url, nodes = line.split("\t")
        rows.append({"name": name, "url": url, "nodes": int(nodes) if nodes.strip("- ") else None})
    return rows
