"""Exact computations of spectral measures attached to free quantum groups:
Temperley-Lieb Gram and Weingarten matrices, free probability on moment
sequences, graph spectral measures and matrix models."""

from .errors import FreespecError, InputError, ResourceCapError, SingularMatrixError
from .freeprob import (CumulantSequence, MomentSequence, NamedLaw, StarWord, circular_star_moment,
                       cumulants_to_moments, free_add_conv, free_mult_conv, law_moments, moment_compare,
                       moments_to_cumulants)
from .graphs import (RootedColoredGraph, classical_character_measure_graph, conjecture_compare,
                     lex_free_product, loop_moments, vertex_spectral_measure)
from .ncpart import (NCPairing, NCPartition, Permutation, catalan, enumerate_nc_partitions,
                     enumerate_pairings, kreweras, loop_count)
from .rational import RationalMatrix
from .weingarten import (MonomialSpec, asymptotic_semicircle_report, gram_matrix, integrate_monomial,
                         truncated_character_moment, weingarten_matrix)

__version__ = "0.1.0"
