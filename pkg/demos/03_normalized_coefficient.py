"""
Average normalized ksi coefficient
==================================

Compare the whole-graph average normalized ksi with 1/n. Pass an edge-list
path (for example one of the datasets listed in the bundled manifest) to
include a real network:

    python demos/03_normalized_coefficient.py path/to/edges.txt
"""

import sys

from ksicentrality import GeneratorSpec, average_normalized_ksi, generate, ksi_all, load_edge_list
from ksicentrality.graph import read_manifest

rows = []
for spec in [
    GeneratorSpec("ER", 5000, 0, er_p=0.002),
    GeneratorSpec("BA", 5000, 0, ba_m=3),
    GeneratorSpec("WS", 5000, 0, ws_k=10, ws_p=0.05),
]:
    g = generate(spec)
    rows.append((f"{spec.model} {spec.params()}", g.n, average_normalized_ksi(ksi_all(g))))

for path in sys.argv[1:]:
    g = load_edge_list(path)
    rows.append((path, g.n, average_normalized_ksi(ksi_all(g))))

for name, n, coeff in rows:
    print(f"{name:35s} n={n:8d}  avg normalized ksi={coeff:.3e}  1/n={1 / n:.3e}  ratio={coeff * n:8.1f}")

###############################################################################
# The manifest lists the real networks by name and source URL. Nothing is
# downloaded; fetch a file yourself and pass its path above.
print()
for r in read_manifest()[:5]:
    print(r["name"], r["url"], r["nodes"])
