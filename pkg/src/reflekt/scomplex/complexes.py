"""Finite simplicial complexes with vertex-indexed simplex tables.

Complexes are immutable, closed under faces, and capped at dimension 3:
every complex this package ships is at most 3-dimensional, and a larger
clique in a flag input indicates bad data, so clique enumeration records
oversized cliques instead of storing them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

MAX_DIM = 3


class Graph:
    """A finite simple graph on arbitrary (sortable, hashable) vertices."""

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: Iterable, edges: Iterable):
        self.vertices = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u}, {v}) uses unknown vertex")
            norm.add((u, v) if u < v else (v, u))
        self.edges = frozenset(norm)
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}

    @classmethod
    def from_edges(cls, edges: Iterable, vertices: Iterable = ()) -> "Graph":
        edges = [tuple(e) for e in edges]
        verts = set(vertices)
        for u, v in edges:
            verts.add(u)
            verts.add(v)
        return cls(verts, edges)

    def neighbors(self, v) -> frozenset:
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def adjacent(self, u, v) -> bool:
        return v in self._adj[u]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def subgraph(self, keep: Iterable) -> "Graph":
        keep = set(keep)
        return Graph(
            keep & set(self.vertices),
            [e for e in self.edges if e[0] in keep and e[1] in keep],
        )

    def complement(self) -> "Graph":
        comp = [
            (u, v)
            for u, v in combinations(self.vertices, 2)
            if v not in self._adj[u]
        ]
        return Graph(self.vertices, comp)

    def components(self) -> list:
        seen = set()
        result = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in self._adj[v]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            result.append(frozenset(comp))
        return result

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        return len(self.components()) == 1

    def relabeled(self) -> tuple:
        """Copy with vertices renamed 0..n-1; returns (graph, old-name list)."""
        index = {v: i for i, v in enumerate(self.vertices)}
        g = Graph(range(self.n), [(index[u], index[v]) for u, v in self.edges])
        return g, list(self.vertices)

    def to_json(self):
        return {
            "vertices": self.n,
            "labels": list(self.vertices),
            "edges": sorted(list(e) for e in self.edges),
        }

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph({self.n} vertices, {len(self.edges)} edges)"


class SComplex:
    """A finite simplicial complex, stored as per-dimension simplex tables."""

    __slots__ = ("vertices", "_tables", "oversize_cliques")

    def __init__(self, vertices: Iterable, simplices: Iterable[Sequence],
                 oversize_cliques: tuple = ()):
        vertex_set = set(vertices)
        tables = {}
        queue = [tuple(sorted(set(s))) for s in simplices]
        for s in queue:
            vertex_set.update(s)
        # close under faces
        seen = set(queue)
        while queue:
            s = queue.pop()
            k = len(s) - 1
            if k > MAX_DIM:
                raise ValueError(f"simplex {s} exceeds dimension cap {MAX_DIM}")
            tables.setdefault(k, set()).add(s)
            if k > 0:
                for face in combinations(s, k):
                    if face not in seen:
                        seen.add(face)
                        queue.append(face)
        self.vertices = tuple(sorted(vertex_set))
        for v in self.vertices:
            tables.setdefault(0, set()).add((v,))
        self._tables = {k: frozenset(t) for k, t in tables.items()}
        self.oversize_cliques = oversize_cliques

    # -- basic queries ------------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._tables, default=-1)

    def simplices(self, k: int) -> tuple:
        return tuple(sorted(self._tables.get(k, ())))

    def all_simplices(self) -> list:
        out = []
        for k in sorted(self._tables):
            out.extend(sorted(self._tables[k]))
        return out

    def f_vector(self) -> tuple:
        return tuple(len(self._tables.get(k, ())) for k in range(self.dim + 1))

    def contains(self, simplex: Sequence) -> bool:
        s = tuple(sorted(simplex))
        return s in self._tables.get(len(s) - 1, frozenset())

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def is_empty(self) -> bool:
        return not self.vertices

    def skeleton_graph(self) -> Graph:
        return Graph(self.vertices, self._tables.get(1, frozenset()))

    def vertex_degree(self, v) -> int:
        return sum(1 for e in self._tables.get(1, ()) if v in e)

    def __eq__(self, other):
        return (
            isinstance(other, SComplex)
            and self.vertices == other.vertices
            and self._tables == other._tables
        )

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self._tables.items()))))

    def __repr__(self):
        return f"SComplex(f={self.f_vector()})"

    def to_json(self):
        return {
            "vertices": self.n_vertices,
            "labels": list(self.vertices),
            "simplices": [list(s) for s in self.all_simplices()],
        }

    @classmethod
    def from_json(cls, data) -> "SComplex":
        labels = data.get("labels", range(data["vertices"]))
        return cls(labels, [tuple(s) for s in data["simplices"]])


def flag_complex_from_graph(g: Graph) -> SComplex:
    """The complex whose simplices are the cliques of g, up to dimension 3.

    4-simplices and larger are not stored; any 5-clique found is recorded on
    the result's ``oversize_cliques`` so callers can reject bad input.
    """
    simplices = [(v,) for v in g.vertices]
    simplices.extend(g.edges)
    triangles = []
    for u, v in sorted(g.edges):
        for w in sorted(g.neighbors(u) & g.neighbors(v)):
            if w > v:
                triangles.append((u, v, w))
    simplices.extend(triangles)
    tetrahedra = []
    oversize = []
    for a, b, c in triangles:
        common = g.neighbors(a) & g.neighbors(b) & g.neighbors(c)
        for w in sorted(common):
            if w > c:
                tetrahedra.append((a, b, c, w))
                deeper = common & g.neighbors(w)
                for x in sorted(deeper):
                    if x > w:
                        oversize.append((a, b, c, w, x))
    simplices.extend(tetrahedra)
    return SComplex(g.vertices, simplices, oversize_cliques=tuple(sorted(set(oversize))))


def full_subcomplex(complex_: SComplex, keep: Iterable) -> SComplex:
    """Full (induced) subcomplex on a vertex subset."""
    keep = set(keep)
    unknown = keep - set(complex_.vertices)
    if unknown:
        raise ValueError(f"vertices not in complex: {sorted(unknown)}")
    simplices = [
        s
        for k in range(complex_.dim + 1)
        for s in complex_.simplices(k)
        if all(v in keep for v in s)
    ]
    return SComplex(keep, simplices)


def link(complex_: SComplex, simplex: Sequence) -> SComplex:
    """Link of a simplex: all faces disjoint from it whose join lies in K."""
    s = tuple(sorted(simplex))
    if not complex_.contains(s):
        raise ValueError(f"simplex {s} not in complex")
    s_set = set(s)
    members = []
    for k in range(complex_.dim + 1):
        for tau in complex_.simplices(k):
            if s_set.isdisjoint(tau) and complex_.contains(tuple(sorted(tau + s))):
                members.append(tau)
    return SComplex([], members)


def is_flag(complex_: SComplex):
    """Whether every clique of the 1-skeleton spans a simplex.

    Returns (flag, witness); the witness is a clique that spans no simplex.
    """
    g = complex_.skeleton_graph()
    flagged = flag_complex_from_graph(g)
    if flagged.oversize_cliques:
        return False, flagged.oversize_cliques[0]
    for k in (2, 3):
        for s in flagged.simplices(k):
            if not complex_.contains(s):
                return False, s
    return True, None


def _induced_square(g: Graph):
    for u, v in combinations(g.vertices, 2):
        if g.adjacent(u, v):
            continue
        common = sorted(g.neighbors(u) & g.neighbors(v))
        for x, y in combinations(common, 2):
            if not g.adjacent(x, y):
                return (u, x, v, y)
    return None


def is_flag_no_square(complex_: SComplex):
    """Flag plus no chordless 4-cycle in the 1-skeleton.

    Returns (ok, witness); the witness is either a non-spanning clique or an
    induced square (u, x, v, y) with u, v and x, y the non-adjacent pairs.
    """
    flag, clique = is_flag(complex_)
    if not flag:
        return False, clique
    square = _induced_square(complex_.skeleton_graph())
    if square is not None:
        return False, square
    return True, None


@dataclass(frozen=True)
class SurfaceClassification:
    is_closed_surface: bool
    orientable: bool
    euler_characteristic: int
    genus: Optional[int]
    reason: str = ""


def classify_closed_surface(complex_: SComplex) -> SurfaceClassification:
    """Decide whether a complex triangulates a closed connected surface.

    Checks purity, edge-in-two-triangles, vertex links being single cycles,
    and connectivity; orientability by propagating triangle orientations.
    """
    chi = 0
    for k in range(complex_.dim + 1):
        chi += (-1) ** k * len(complex_.simplices(k))

    def fail(reason):
        return SurfaceClassification(False, False, chi, None, reason)

    if complex_.dim != 2:
        return fail(f"dimension {complex_.dim} != 2")
    triangles = complex_.simplices(2)
    edges = complex_.simplices(1)
    # purity: every vertex and edge lies in a triangle
    in_tri = {e: 0 for e in edges}
    vert_in = set()
    for t in triangles:
        vert_in.update(t)
        for e in combinations(t, 2):
            in_tri[e] += 1
    if set(complex_.vertices) - vert_in:
        return fail("not pure: isolated vertex")
    bad = [e for e, c in in_tri.items() if c != 2]
    if bad:
        return fail(f"edge {bad[0]} lies in {in_tri[bad[0]]} triangles")
    for v in complex_.vertices:
        lk = link(complex_, (v,))
        lk_g = lk.skeleton_graph()
        if lk.simplices(2) or not lk_g.vertices:
            return fail(f"link of {v} is not a cycle")
        if any(lk_g.degree(w) != 2 for w in lk_g.vertices):
            return fail(f"link of {v} is not a cycle")
        if not lk_g.is_connected():
            return fail(f"link of {v} is disconnected")
    if not complex_.skeleton_graph().is_connected():
        return fail("complex is disconnected")

    # orientability: neighbouring triangles must induce opposite directions
    # on their shared edge
    edge_to_tris = {}
    for idx, t in enumerate(triangles):
        for e in combinations(t, 2):
            edge_to_tris.setdefault(e, []).append(idx)

    def induced(t, orientation):
        a, b, c = t
        cyc = [(a, b), (b, c), (c, a)]
        if orientation < 0:
            cyc = [(b, a), (c, b), (a, c)]
        return cyc

    orient = {0: 1}
    stack = [0]
    orientable = True
    while stack and orientable:
        idx = stack.pop()
        t = triangles[idx]
        directed = set(induced(t, orient[idx]))
        for e in combinations(t, 2):
            for other in edge_to_tris[e]:
                if other == idx:
                    continue
                # the neighbour must traverse e in the opposite direction
                needed = None
                for sign in (1, -1):
                    dirs = induced(triangles[other], sign)
                    rev = {(b, a) for a, b in directed}
                    if any(d in rev for d in dirs if set(d) == set(e)):
                        needed = sign
                        break
                if needed is None:
                    orientable = False
                    break
                if other in orient:
                    if orient[other] != needed:
                        orientable = False
                        break
                else:
                    orient[other] = needed
                    stack.append(other)
            if not orientable:
                break

    genus = (2 - chi) // 2 if orientable else None
    return SurfaceClassification(True, orientable, chi, genus)


def is_join(complex_: SComplex) -> bool:
    """Whether a flag complex splits as a join of two non-empty subcomplexes.

    Equivalent to the complement of the 1-skeleton being disconnected.
    """
    if complex_.n_vertices < 2:
        return False
    comp = complex_.skeleton_graph().complement()
    return len(comp.components()) > 1
