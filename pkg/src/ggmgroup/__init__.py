"""Groups acting on Gaussian graphical models."""

from .graph_core import Graph, compute_preorder, maximal_cliques, poset_PC, quotient_colored, color_edges
from .group import g0_pattern, graph_automorphisms, colored_quotient_automorphisms, decompose, is_in_G
from .orbit import orbit_dim_combinatorial, orbit_dim_formula, stabilizer_dim_formula, is_transitive
from .estimation import (
    min_sample_size,
    breakdown_upper_bound,
    maximal_invariant,
    reduce_to_slice,
    equivariant_estimator,
    mle_decomposable,
    transitive_equivariant_estimator,
)

__version__ = "0.1.0"
