"""
Free cumulants and free convolutions
====================================

Moments, free cumulants and the two free convolutions on exact rational
moment sequences.
"""

from fractions import Fraction

import numpy as np
from scipy.stats import unitary_group

from freespec import MomentSequence, NamedLaw, free_add_conv, free_mult_conv, law_moments
from freespec.freeprob import circular_star_moment, moments_to_cumulants

poisson = law_moments(NamedLaw("free_poisson"), 6)
print("free Poisson:", [str(m) for m in poisson.moments])
print("its cumulants:", [str(c) for c in moments_to_cumulants(poisson).cumulants])

# adding two free semicirculars of variance 1 gives variance 2
s1 = law_moments(NamedLaw("semicircle"), 6)
print(free_add_conv(s1, s1) == law_moments(NamedLaw("semicircle", 2), 6))

# squaring a free Poisson freely gives Fuss-Catalan numbers
print([str(m) for m in free_mult_conv(poisson, poisson).moments])

# the circular element: only alternating words survive
for w in ["c c*", "c c", "c c* c c*", "c c c* c*"]:
    print(w, circular_star_moment(w))

###############################################################################
# Random matrices make free multiplicative convolution visible: conjugating
# one diagonal matrix by a Haar unitary makes it asymptotically free from
# another.

N = 400
a = np.diag(np.repeat([1.0, 2.0], N // 2))
b = np.diag(np.repeat([1.0, 3.0], N // 2))
u = unitary_group.rvs(N, random_state=1)
prod = a @ u @ b @ u.conj().T
mc = [np.trace(np.linalg.matrix_power(prod, k)).real / N for k in range(1, 5)]

mu = MomentSequence(tuple(Fraction(1 + 2 ** k, 2) for k in range(1, 5)))
nu = MomentSequence(tuple(Fraction(1 + 3 ** k, 2) for k in range(1, 5)))
exact = free_mult_conv(mu, nu)
for k in range(1, 5):
    print(k, float(exact[k]), round(mc[k - 1], 3))
