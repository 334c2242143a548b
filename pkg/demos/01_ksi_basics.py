"""
Ksi-centrality on small graphs
==============================

The ksi-centrality of a vertex counts the edges leaving its neighborhood and
divides by its degree. This script computes it on a few graphs whose values
can be worked out by hand, and checks the fast path against dense matrices.
"""

import numpy as np

from ksicentrality import from_edges, ksi_all, ksi_all_dense_oracle, average_normalized_ksi

###############################################################################
# A path a - b - c. The neighbor of an endpoint has two edges, both leaving
# {b}, so the endpoints score 2; the middle vertex scores 1.
p3 = from_edges(3, [(0, 1), (1, 2)], labels=["a", "b", "c"])
scores = ksi_all(p3)
print("P3 ksi:", dict(zip(p3.labels, scores.ksi.tolist())))

###############################################################################
# Cycles are vertex-transitive, so every vertex gets the same value: 2.
c9 = from_edges(9, [(i, (i + 1) % 9) for i in range(9)])
print("C9 ksi:", ksi_all(c9).ksi)
print("C9 normalized ksi:", ksi_all(c9).ksi_norm[0], "= 2 / (n - 2) =", 2 / 7)

###############################################################################
# In a clique every boundary edge points back at the vertex itself: ksi = 1.
k6 = from_edges(6, [(i, j) for i in range(6) for j in range(i + 1, 6)])
print("K6 ksi:", ksi_all(k6).ksi)

###############################################################################
# Isolated vertices get ksi = 1 and normalized ksi = 1/n by convention.
g = from_edges(4, [(0, 1)])
s = ksi_all(g)
print("isolated vertices:", s.ksi[2:], s.ksi_norm[2:])
print("average normalized ksi:", average_normalized_ksi(s))

###############################################################################
# The fast path merges sorted neighbor lists. The dense oracle evaluates
# diag(A^2 (J - A)) / diag(A^2) directly; both give identical integers.
rng = np.random.default_rng(0)
iu = np.triu_indices(40, 1)
keep = rng.random(len(iu[0])) < 0.15
er = from_edges(40, np.column_stack([iu[0][keep], iu[1][keep]]))
fast, dense = ksi_all(er), ksi_all_dense_oracle(er)
print("fast == dense:", np.array_equal(fast.boundary_edges, dense.boundary_edges))
