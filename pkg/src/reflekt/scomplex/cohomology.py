"""Reduced integral simplicial cohomology and the punctured dimension.

Cohomology is computed from Smith normal forms of the coboundary matrices
of the augmented cochain complex, so torsion is detected, not just Betti
ranks.  The convention for the empty complex is a single Z in degree -1,
which keeps punctures that delete every vertex from being silently
swallowed.
"""

from __future__ import annotations

from typing import Dict, NamedTuple, Optional

from ..exactalg import smith_normal_form
from .complexes import SComplex, full_subcomplex


class CohomologyGroup(NamedTuple):
    betti: int
    torsion: tuple  # elementary divisors > 1

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion


def coboundary_matrix(complex_: SComplex, k: int):
    """Matrix of delta^k: C^k -> C^(k+1); rows = (k+1)-simplices.

    k = -1 gives the augmentation column (all ones).
    """
    if k == -1:
        return [[1] for _ in complex_.simplices(0)]
    lower = complex_.simplices(k)
    upper = complex_.simplices(k + 1)
    index = {s: i for i, s in enumerate(lower)}
    rows = []
    for tau in upper:
        row = [0] * len(lower)
        for i in range(len(tau)):
            face = tau[:i] + tau[i + 1:]
            row[index[face]] += (-1) ** i
        rows.append(row)
    return rows


def reduced_cohomology(complex_: SComplex) -> Dict[int, CohomologyGroup]:
    """Reduced integral cohomology per degree, from -1 up to dim."""
    if complex_.is_empty():
        return {-1: CohomologyGroup(1, ())}
    dim = complex_.dim
    counts = {-1: 1}
    for k in range(dim + 1):
        counts[k] = len(complex_.simplices(k))
    divisors = {}
    for k in range(-1, dim):
        divisors[k] = smith_normal_form(coboundary_matrix(complex_, k))
    ranks = {k: len(divisors[k]) for k in divisors}
    ranks[dim] = 0
    ranks[-2] = 0
    out = {}
    for k in range(-1, dim + 1):
        betti = counts[k] - ranks[k] - ranks[k - 1]
        torsion = tuple(d for d in divisors.get(k - 1, ()) if d > 1)
        out[k] = CohomologyGroup(betti, torsion)
    return out


def top_nonvanishing_degree(complex_: SComplex) -> Optional[int]:
    """Largest degree with nonzero reduced cohomology, or None if all vanish."""
    groups = reduced_cohomology(complex_)
    live = [k for k, g in groups.items() if not g.is_zero]
    return max(live) if live else None


def pcd(complex_: SComplex) -> int:
    """Puncture-respecting cohomological dimension.

    Max over all simplices sigma (the empty one included) of the top degree
    with nonzero reduced cohomology of the full subcomplex on the vertices
    outside sigma.  Returns -1 when every puncture is acyclic.
    """
    if complex_.is_empty():
        raise ValueError("pcd of the empty complex is undefined")
    vertex_set = set(complex_.vertices)
    best = -1
    punctures = [()]
    for k in range(complex_.dim + 1):
        punctures.extend(complex_.simplices(k))
    for sigma in punctures:
        remaining = vertex_set.difference(sigma)
        sub = full_subcomplex(complex_, remaining)
        top = top_nonvanishing_degree(sub)
        if top is not None and top > best:
            best = top
            if best == complex_.dim:
                break  # cannot be exceeded: punctures are subcomplexes
    return best
