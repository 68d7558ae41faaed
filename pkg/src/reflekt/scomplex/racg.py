"""Right-angled Coxeter groups read off a nerve.

A RACG is determined by a graph: one involution per vertex, two generators
commuting exactly when the vertices are adjacent.  Hyperbolicity and the
boundary dimension are computed from the nerve by the flag-no-square test
and the punctured cohomological dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import pcd
from .complexes import Graph, SComplex, is_flag_no_square


@dataclass(frozen=True)
class RacgPresentation:
    generators: tuple
    commuting_pairs: frozenset

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def to_json(self):
        return {
            "generators": list(self.generators),
            "commuting_pairs": sorted(list(p) for p in self.commuting_pairs),
        }


def racg_from_nerve(g: Graph) -> RacgPresentation:
    """One involution per vertex; adjacent generators commute."""
    return RacgPresentation(g.vertices, frozenset(g.edges))


def hyperbolicity(complex_: SComplex):
    """Gromov hyperbolicity of the RACG = the nerve is flag-no-square.

    Returns (hyperbolic, witness).
    """
    return is_flag_no_square(complex_)


def boundary_dim(complex_: SComplex) -> int:
    """Dimension of the Gromov boundary: pcd of a flag-no-square nerve."""
    ok, witness = is_flag_no_square(complex_)
    if not ok:
        raise ValueError(
            f"boundary_dim requires a flag-no-square nerve; witness: {witness}"
        )
    return pcd(complex_)
