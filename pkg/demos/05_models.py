"""
Matrix models
=============

Haar SU(2) sampling against exact integrals, the S_n fixed-point model and
the 4 x 4 magic unitary made from Pauli matrices.
"""

import numpy as np

from freespec import integrate_monomial
from freespec.models import (haar_su2_sample, magic_residuals, pauli_character_mc, pauli_magic,
                             sn_fixed_point_moments, su2_mc_moment, su2_monomial_factors)

for powers in [(1, 0, 0, 0), (2, 0, 0, 0), (1, 1, 0, 0)]:
    est = su2_mc_moment(powers, 100_000, seed=0)
    exact = integrate_monomial(2, su2_monomial_factors(powers))
    print(powers, f"{est.mean:.4f} +- {est.stderr:.4f}", exact)

###############################################################################
# Fixed points of a random permutation of 3 points agree with free Poisson
# up to the fourth moment.

print(*sn_fixed_point_moments(3, 5).moments)

###############################################################################
# The Pauli construction gives a magic unitary for every element of SU(2).

u = pauli_magic(haar_su2_sample(seed=4))
print({k: f"{v:.1e}" for k, v in magic_residuals(u).items()})

data = pauli_character_mc(20_000, K=4, seed=0)
print(np.round(data.moments, 3))
