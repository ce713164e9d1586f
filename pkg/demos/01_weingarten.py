"""
Integrating over the free orthogonal quantum group
==================================================

The Gram matrix of noncrossing pairings and its inverse, the Weingarten
matrix, are all that is needed to integrate monomials in the generators.
"""

from freespec import gram_matrix, integrate_monomial, truncated_character_moment, weingarten_matrix
from freespec.ncpart import catalan, enumerate_pairings
from freespec.weingarten import asymptotic_semicircle_report

# the three noncrossing pairings of six points
for p in enumerate_pairings(3):
    print(p.pairs)

# entries are n to the number of loops formed by gluing two diagrams
print(gram_matrix(3, 2))
print(weingarten_matrix(3, 2))

# a few integrals at n = 2
print(integrate_monomial(2, [(1, 1), (1, 1)]))          # 1/2
print(integrate_monomial(2, [(1, 1)] * 4))              # 1/3
print(integrate_monomial(2, [(1, 1), (1, 2), (1, 1), (1, 2)]))  # 0

###############################################################################
# The full character u_11 + ... + u_nn has Catalan moments for every n.

for k in range(1, 6):
    print(k, truncated_character_moment(k, 3, 3), catalan(k))

###############################################################################
# Truncating to a single diagonal entry breaks this, but rescaling by n
# brings the moments back to Catalan as n grows.

for row in asymptotic_semicircle_report(3, 1, [4, 8, 16, 32, 64]):
    print(f"n={row.n:3d}  value={float(row.value):.6f}  error={float(row.error):.6f}")
