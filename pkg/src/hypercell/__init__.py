"""Combinatorial verification toolkit for the ideal right-angled 24-cell.

Face lattices and f-vectors, exact volume bookkeeping in units of pi^2/3,
planar rotation systems, octahedrite enumeration, pattern-graph embedding
searches, facet-adjacency circuits with the Lorentzian Gram obstruction,
and the Nikulin-Khovanskii average-face bound.
"""

__version__ = "0.1.0"

from .lattice import (  # noqa: F401
    FVector,
    FaceLattice,
    antiprism,
    build_from_facets,
    canonical_24cell,
    combinatorially_isomorphic,
    cube,
    f_vector,
    facet_lattice,
    hypercube,
    is_simple_at_edges,
    lattice_from_text,
    lattice_to_text,
    octahedron,
    simplex,
    vertex_figure,
)
