"""Menger-curve special subgroups: puncture a torus nerve at an independent set.

Removing pairwise non-adjacent vertices from a flag-no-square triangulation
of a positive-genus closed orientable surface leaves a full subcomplex that
is non-planar, inseparable, not a join, and of punctured cohomological
dimension 1; those are exactly the checks bundled into the certificate.
The certificate embeds the subcomplex itself plus every witness, so a
third party can re-verify without rebuilding the ambient complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .scomplex import (
    Graph,
    SComplex,
    classify_closed_surface,
    find_k5_or_k33_minor,
    full_subcomplex,
    is_flag_no_square,
    is_inseparable,
    is_join,
    link,
    pcd,
    verify_minor,
)


def independent_set(g: Graph, size: int, hint: Optional[Sequence] = None):
    """An independent set of the requested size.

    With a hint: verify pairwise non-adjacency and the size, and return it.
    Without: deterministic branch-and-bound for the lexicographically least
    independent set of that size; raises with the best size found if none
    exists.
    """
    if size < 0:
        raise ValueError("size must be non-negative")
    if hint is not None:
        hint = tuple(sorted(hint))
        if len(hint) != size:
            raise ValueError(f"hint has {len(hint)} vertices, expected {size}")
        unknown = set(hint) - set(g.vertices)
        if unknown:
            raise ValueError(f"hint vertices not in graph: {sorted(unknown)}")
        for i, a in enumerate(hint):
            for b in hint[i + 1:]:
                if g.adjacent(a, b):
                    raise ValueError(f"hint vertices {a} and {b} are adjacent")
        return hint
    if size == 0:
        return ()
    order = list(g.vertices)
    n = len(order)
    best_seen = 0
    chosen = []

    def extend(start, banned):
        nonlocal best_seen
        if len(chosen) == size:
            return True
        # bound: even taking every remaining unbanned vertex cannot reach size
        remaining = sum(
            1 for k in range(start, n) if order[k] not in banned
        )
        if len(chosen) + remaining < size:
            return False
        for k in range(start, n):
            v = order[k]
            if v in banned:
                continue
            chosen.append(v)
            best_seen = max(best_seen, len(chosen))
            if extend(k + 1, banned | g.neighbors(v)):
                return True
            chosen.pop()
        return False

    if extend(0, frozenset()):
        return tuple(chosen)
    raise ValueError(
        f"no independent set of size {size}; best found had size {best_seen}"
    )


@dataclass(frozen=True)
class MengerCertificate:
    ambient_id: str
    removed_vertices: tuple
    subcomplex: SComplex
    checks: dict
    verdict: bool
    witnesses: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "ambient": self.ambient_id,
            "removed_vertices": list(self.removed_vertices),
            "subcomplex": self.subcomplex.to_json(),
            "checks": {k: dict(v) for k, v in self.checks.items()},
            "witnesses": self.witnesses,
            "verdict": self.verdict,
        }


def menger_certificate(
    ambient: SComplex,
    removed: Sequence,
    ambient_id: str = "",
) -> MengerCertificate:
    """Certificate that the special subgroup on the remaining vertices has
    Menger-curve boundary.

    Hypotheses (verified up front, erroring before any check runs): the
    ambient complex is a flag-no-square triangulation of a closed orientable
    surface of genus >= 1, and the removed vertices form a non-empty
    independent set.
    """
    removed = tuple(sorted(set(removed)))
    if not removed:
        raise ValueError("removed vertex set must be non-empty")
    unknown = set(removed) - set(ambient.vertices)
    if unknown:
        raise ValueError(f"vertices not in ambient complex: {sorted(unknown)}")
    g = ambient.skeleton_graph()
    for i, a in enumerate(removed):
        for b in removed[i + 1:]:
            if g.adjacent(a, b):
                raise ValueError(f"removed vertices {a} and {b} are adjacent")
    ok, witness = is_flag_no_square(ambient)
    if not ok:
        raise ValueError(f"ambient complex is not flag-no-square: {witness}")
    sc = classify_closed_surface(ambient)
    if not (sc.is_closed_surface and sc.orientable):
        raise ValueError(f"ambient complex is not a closed orientable surface: {sc}")
    if sc.genus is None or sc.genus < 1:
        raise ValueError(f"ambient surface has genus {sc.genus} < 1")

    keep = set(ambient.vertices) - set(removed)
    sub = full_subcomplex(ambient, keep)
    checks = {}
    witnesses = {}

    fns_ok, fns_witness = is_flag_no_square(sub)
    checks["full_flag_no_square"] = {"pass": fns_ok}
    if fns_witness is not None:
        witnesses["flag_no_square"] = list(fns_witness)

    minor = find_k5_or_k33_minor(sub.skeleton_graph())
    nonplanar = minor is not None and verify_minor(sub.skeleton_graph(), minor)
    checks["nonplanar"] = {
        "pass": nonplanar,
        "kind": minor.kind if minor else None,
    }
    if minor is not None:
        witnesses["minor_branch_sets"] = [sorted(s) for s in minor.branch_sets]

    insep_ok, sep_witness = is_inseparable(sub)
    checks["inseparable"] = {"pass": insep_ok}
    if sep_witness is not None:
        witnesses["separating_subcomplex"] = {
            "kind": sep_witness.kind,
            "removed": list(sep_witness.removed),
        }

    sub_pcd = pcd(sub)
    checks["pcd_equals_1"] = {"pass": sub_pcd == 1, "pcd": sub_pcd}

    checks["not_a_join"] = {"pass": not is_join(sub)}

    verdict = all(c["pass"] for c in checks.values())
    return MengerCertificate(
        ambient_id, removed, sub, checks, verdict, witnesses
    )


def lemma_step(complex_: SComplex, vertex) -> tuple:
    """Remove one vertex whose link is a circle and verify the conclusions:
    the result is non-planar, inseparable, and has pcd 1.

    Used to replay, instance by instance, the induction that underlies the
    puncturing construction.  Raises when the link is not a single cycle.
    """
    lk = link(complex_, (vertex,))
    lk_g = lk.skeleton_graph()
    is_cycle = (
        bool(lk_g.vertices)
        and not lk.simplices(2)
        and all(lk_g.degree(v) == 2 for v in lk_g.vertices)
        and lk_g.is_connected()
    )
    if not is_cycle:
        raise ValueError(f"link of {vertex} is not a single cycle")
    keep = set(complex_.vertices) - {vertex}
    sub = full_subcomplex(complex_, keep)
    minor = find_k5_or_k33_minor(sub.skeleton_graph())
    conclusions = {
        "nonplanar": minor is not None,
        "inseparable": is_inseparable(sub)[0],
        "pcd_equals_1": pcd(sub) == 1,
    }
    return sub, conclusions


def degree6_obstruction_facts(complex_: SComplex) -> dict:
    """Degree multiset and triangle count mod 6.

    A degree-6 triangulation can only contain a cubic triangle-free
    inseparable subgraph if its complement tiles by hexagons, which forces
    the triangle count to be divisible by 6; these are the two machine-
    checkable ingredients.
    """
    g = complex_.skeleton_graph()
    degrees = {}
    for v in g.vertices:
        degrees[g.degree(v)] = degrees.get(g.degree(v), 0) + 1
    triangles = len(complex_.simplices(2))
    return {
        "degree_multiset": degrees,
        "triangle_count": triangles,
        "triangle_count_mod_6": triangles % 6,
    }
