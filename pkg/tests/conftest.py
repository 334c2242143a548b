import itertools

import numpy as np
import pytest

from ksicentrality.graph import from_edges


def cycle(n):
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return from_edges(n, list(itertools.combinations(range(n), 2)))


def star(n):
    """Star on n vertices, center 0."""
    return from_edges(n, [(0, i) for i in range(1, n)])


def path(n):
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def random_graph(n, p, seed):
    """Small G(n, p) drawn directly from a dense coin matrix (independent of the generators module)."""
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, 1)
    keep = rng.random(len(iu[0])) < p
    return from_edges(n, np.column_stack([iu[0][keep], iu[1][keep]]))


def brute_boundary(g, i):
    """Edges with exactly one endpoint in N(i), counted straight from the edge list."""
    nb = set(int(v) for v in g.neighbors(i))
    return sum((u in nb) != (v in nb) for u, v in g.edges())


def brute_paths(g, i):
    """d_i plus the number of walks i~j~k with k != i and k not adjacent to i."""
    nb = set(int(v) for v in g.neighbors(i))
    count = 0
    for j in nb:
        for k in g.neighbors(j):
            k = int(k)
            if k != i and k not in nb:
                count += 1
    return len(nb) + count


@pytest.fixture
def small_graphs():
    graphs = [cycle(5), cycle(9), complete(4), complete(6), star(5), path(3), path(6)]
    graphs += [random_graph(n, p, s) for s, (n, p) in enumerate([(12, 0.3), (20, 0.15), (25, 0.5), (8, 0.9)])]
    graphs.append(from_edges(6, [(0, 1), (1, 2), (3, 4)]))  # isolated vertex 5
    return graphs


# one line per acceptance criterion, printed after the run
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
