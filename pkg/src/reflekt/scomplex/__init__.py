"""Simplicial complex engine: flags, links, surfaces, cohomology, minors."""

from .cohomology import (
    CohomologyGroup,
    coboundary_matrix,
    pcd,
    reduced_cohomology,
    top_nonvanishing_degree,
)
from .complexes import (
    Graph,
    SComplex,
    SurfaceClassification,
    classify_closed_surface,
    flag_complex_from_graph,
    full_subcomplex,
    is_flag,
    is_flag_no_square,
    is_join,
    link,
)
from .planarity import (
    MinorWitness,
    dmp_planar,
    find_k5_or_k33_minor,
    is_planar,
    verify_minor,
)
from .racg import RacgPresentation, boundary_dim, hyperbolicity, racg_from_nerve
from .separation import SeparationWitness, is_inseparable

__all__ = [
    "CohomologyGroup",
    "Graph",
    "MinorWitness",
    "RacgPresentation",
    "SComplex",
    "SeparationWitness",
    "SurfaceClassification",
    "boundary_dim",
    "classify_closed_surface",
    "coboundary_matrix",
    "dmp_planar",
    "find_k5_or_k33_minor",
    "flag_complex_from_graph",
    "full_subcomplex",
    "hyperbolicity",
    "is_flag",
    "is_flag_no_square",
    "is_inseparable",
    "is_join",
    "is_planar",
    "link",
    "pcd",
    "racg_from_nerve",
    "reduced_cohomology",
    "top_nonvanishing_degree",
    "verify_minor",
]
