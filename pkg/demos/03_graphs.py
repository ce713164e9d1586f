"""
Walks on colored graphs and the lexicographic free product
==========================================================

Rooted graphs carry a spectral measure whose moments count closed walks at
the root.
"""

from freespec import RootedColoredGraph, lex_free_product, loop_moments
from freespec.graphs import classical_character_measure_graph, conjecture_compare, vertex_spectral_measure

square = RootedColoredGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
print(*loop_moments(square, 6).moments)

mu = vertex_spectral_measure(square)
for x, w in mu.atoms:
    print(f"eigenvalue {x:+.3f}  weight {w:.3f}")

###############################################################################
# Putting a copy of X at each vertex of Y. The two graphs must use
# different colors.

x = RootedColoredGraph.from_edges(2, [(0, 1, "a")])
y = RootedColoredGraph.from_edges(2, [(0, 1, "b")])
xy = lex_free_product(x, y)
print(xy.n, sorted(xy.edges))

###############################################################################
# Comparing classical symmetry data of the uncolored graphs against free
# multiplicative convolution shows a mismatch at the second moment.

k2 = classical_character_measure_graph(x, 3)
k4 = classical_character_measure_graph(xy.recolor("a"), 3)
report = conjecture_compare(k2, k2, k4)
print(*report.left, "|", *report.right, "| first mismatch at", report.first_mismatch)
