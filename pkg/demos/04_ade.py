"""
Spectral measures of ADE graphs
===============================

Circle measures built from roots of unity reproduce the closed-walk counts
of the A and D type graphs.
"""

from freespec.ade import (FAMILIES, GraphFamily, build_graph, circle_moment_exact, poincare_coeffs,
                          pushforward_real, theorem_measure, verify_family)

for tag, n in [("A", 5), ("D", 4), ("Aaff", 3), ("Daff", 2), ("Ainf", None), ("Aline", None), ("Dinf", None)]:
    fam = GraphFamily(tag, n)
    report = verify_family(fam, 6)
    got = [str(c.got) for c in report.cases]
    print(f"{FAMILIES[tag]:>14}  n={n}  pass={report.passed}  moments={' '.join(got)}")

###############################################################################
# Mapping u to u + 1/u turns the circle measure into the real spectral
# measure of the graph at its root.

real = pushforward_real(theorem_measure(GraphFamily("A", 5)))
for x, w in real.atoms:
    print(f"{x:+.4f}  {w:.4f}")

###############################################################################
# The half-line: the Poincare coefficients are the Catalan numbers.

fam = GraphFamily("Ainf", radius=8)
print(*poincare_coeffs(build_graph(fam, 6), 6))
print(*(circle_moment_exact(theorem_measure(fam), k) for k in range(7)))
