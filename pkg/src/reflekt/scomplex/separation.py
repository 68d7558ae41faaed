"""Inseparability: no forbidden subcomplex disconnects the complex.

The forbidden subcomplexes are a vertex, an edge, a triangle, two
non-adjacent vertices, two edges meeting at a vertex (the suspension of a
vertex), and two triangles meeting along an edge (the suspension of an
edge); suspension points are required to be non-adjacent.  Removal is
interpreted as passing to the full subcomplex on the complementary
vertices.
"""

from __future__ import annotations

from itertools import combinations
from typing import NamedTuple, Optional

from .complexes import SComplex, full_subcomplex


class SeparationWitness(NamedTuple):
    kind: str
    removed: tuple


def _disconnects(complex_: SComplex, removed) -> bool:
    keep = set(complex_.vertices).difference(removed)
    if not keep:
        return False
    return not full_subcomplex(complex_, keep).skeleton_graph().is_connected()


def _forbidden_candidates(complex_: SComplex):
    g = complex_.skeleton_graph()
    for v in complex_.vertices:
        yield SeparationWitness("vertex", (v,))
    for e in complex_.simplices(1):
        yield SeparationWitness("edge", e)
    for t in complex_.simplices(2):
        yield SeparationWitness("triangle", t)
    for u, v in combinations(complex_.vertices, 2):
        if not g.adjacent(u, v):
            yield SeparationWitness("non-adjacent pair", (u, v))
    # suspension of a vertex: p - r - q with p, q non-adjacent
    for r in complex_.vertices:
        for p, q in combinations(sorted(g.neighbors(r)), 2):
            if not g.adjacent(p, q):
                yield SeparationWitness("vertex suspension", (p, r, q))
    # suspension of an edge: triangles (p, r, s), (q, r, s) with p, q non-adjacent
    triangles = complex_.simplices(2)
    by_edge = {}
    for t in triangles:
        for e in combinations(t, 2):
            by_edge.setdefault(e, []).append(t)
    for e in sorted(by_edge):
        tris = sorted(by_edge[e])
        for t1, t2 in combinations(tris, 2):
            p = next(v for v in t1 if v not in e)
            q = next(v for v in t2 if v not in e)
            if p != q and not g.adjacent(p, q):
                yield SeparationWitness("edge suspension", tuple(sorted(set(t1) | set(t2))))


def is_inseparable(complex_: SComplex):
    """Returns (inseparable, witness); the witness is the first (in canonical
    order) forbidden subcomplex whose removal disconnects the complex."""
    if not complex_.skeleton_graph().is_connected():
        return False, SeparationWitness("disconnected", ())
    for cand in _forbidden_candidates(complex_):
        if _disconnects(complex_, cand.removed):
            return False, cand
    return True, None
