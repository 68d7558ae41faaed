"""Planarity and K5/K33 minor detection with branch-set witnesses.

Two genuinely independent routes are kept:

* :func:`is_planar` delegates to networkx's exact left-right planarity test.
* :func:`find_k5_or_k33_minor` never consults networkx.  Its negative
  answers come from an own Demoucron-Malgrange-Pertuiset face-embedding
  algorithm (plus Wagner's theorem); its positive answers are explicit
  branch sets, found by contraction search with a subdivision-search
  fallback, and re-verified combinatorially before being returned.
"""

from __future__ import annotations

from itertools import combinations
from typing import NamedTuple, Optional

import networkx as nx

from .complexes import Graph

K5_EDGES = tuple((i, j) for i, j in combinations(range(5), 2))
K33_EDGES = tuple((i, j + 3) for i in range(3) for j in range(3))


class MinorWitness(NamedTuple):
    kind: str                 # "K5" or "K33"
    branch_sets: tuple        # frozensets of original vertices

    @property
    def model_edges(self):
        return K5_EDGES if self.kind == "K5" else K33_EDGES


def is_planar(g: Graph) -> bool:
    """Exact combinatorial planarity (networkx left-right algorithm)."""
    ng = nx.Graph()
    ng.add_nodes_from(g.vertices)
    ng.add_edges_from(g.edges)
    ok, _ = nx.check_planarity(ng)
    return ok


# -- own planarity decider (Demoucron-Malgrange-Pertuiset) -------------------


def _biconnected_components(g: Graph):
    """Vertex sets of biconnected components, by the standard DFS lowpoint."""
    index = {}
    low = {}
    out = []
    edge_stack = []
    counter = [0]

    def dfs(root):
        stack = [(root, None, iter(sorted(g.neighbors(root))))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in index:
                    edge_stack.append((v, w))
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append((w, v, iter(sorted(g.neighbors(w)))))
                    advanced = True
                    break
                if index[w] < index[v]:
                    edge_stack.append((v, w))
                    if index[w] < low[v]:
                        low[v] = index[w]
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if low[v] >= index[u]:
                    comp = set()
                    while edge_stack:
                        a, b = edge_stack[-1]
                        if index[a] >= index[v] or (a == u and b == v):
                            edge_stack.pop()
                            comp.update((a, b))
                            if (a, b) == (u, v):
                                break
                        else:
                            break
                    if comp:
                        out.append(frozenset(comp))

    for root in g.vertices:
        if root not in index:
            dfs(root)
    return out


def _find_cycle(g: Graph):
    """Some cycle in g, as a vertex list, or None."""
    parent = {}
    for root in g.vertices:
        if root in parent:
            continue
        parent[root] = root
        stack = [(root, root)]
        while stack:
            v, par = stack.pop()
            for w in sorted(g.neighbors(v)):
                if w == par:
                    continue
                if w in parent:
                    # close the cycle v .. root-side .. w
                    path_v = [v]
                    while path_v[-1] != root:
                        path_v.append(parent[path_v[-1]])
                    path_w = [w]
                    while path_w[-1] != root:
                        path_w.append(parent[path_w[-1]])
                    common = set(path_v) & set(path_w)
                    iv = next(i for i, x in enumerate(path_v) if x in common)
                    iw = next(i for i, x in enumerate(path_w) if x in common)
                    if path_v[iv] != path_w[iw]:
                        continue
                    cycle = path_v[: iv + 1] + path_w[:iw][::-1]
                    if len(cycle) >= 3:
                        return cycle
                else:
                    parent[w] = v
                    stack.append((w, v))
    return None


def _fragments(g: Graph, embedded_vertices, embedded_edges):
    """Bridges of the embedded subgraph: chords and outside components."""
    frags = []
    for e in sorted(g.edges - embedded_edges):
        u, v = e
        if u in embedded_vertices and v in embedded_vertices:
            frags.append((frozenset(e), (u, v), None))
    seen = set()
    for start in g.vertices:
        if start in embedded_vertices or start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in embedded_vertices and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        attachments = frozenset(
            w for v in comp for w in g.neighbors(v) if w in embedded_vertices
        )
        frags.append((attachments, None, frozenset(comp)))
    return frags


def _alpha_path(g: Graph, attach, interior):
    """A path between two attachments whose interior lies in the fragment."""
    a, b = sorted(attach)[:2]
    parent = {}
    queue = []
    for s in sorted(set(g.neighbors(a)) & interior):
        parent[s] = a
        queue.append(s)
    while queue:
        v = queue.pop(0)
        if b in g.neighbors(v):
            path = [b, v]
            while path[-1] != a:
                path.append(parent[path[-1]])
            path.reverse()
            return path
        for w in sorted(g.neighbors(v)):
            if w in interior and w not in parent:
                parent[w] = v
                queue.append(w)
    raise RuntimeError("fragment has no alpha-path; input not biconnected")


def _dmp_component_planar(g: Graph) -> bool:
    """DMP face embedding on a biconnected simple graph; True iff planar."""
    n, m = g.n, len(g.edges)
    if n < 5 or m < 9:
        return True
    if m > 3 * n - 6:
        return False
    cycle = _find_cycle(g)
    if cycle is None:
        return True
    embedded_vertices = set(cycle)
    embedded_edges = set()
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        embedded_edges.add((a, b) if a < b else (b, a))
    faces = [tuple(cycle), tuple(reversed(cycle))]

    while len(embedded_edges) < m:
        frags = _fragments(g, embedded_vertices, embedded_edges)
        chosen = None
        for frag in frags:
            attach = frag[0]
            admissible = [i for i, f in enumerate(faces) if attach <= set(f)]
            if not admissible:
                return False
            if chosen is None or (len(admissible) == 1 and len(chosen[1]) > 1):
                chosen = (frag, admissible)
            if len(chosen[1]) == 1:
                break
        (attach, chord, interior), admissible = chosen
        face_idx = admissible[0]
        face = faces[face_idx]

        if chord is not None:
            path = list(chord)
        else:
            path = _alpha_path(g, attach, interior)

        ia = face.index(path[0])
        ib = face.index(path[-1])
        if ia > ib:
            path = path[::-1]
            ia, ib = ib, ia
        inner = tuple(path[1:-1])
        face1 = face[ia:ib + 1] + tuple(reversed(inner))
        face2 = face[ib:] + face[:ia + 1] + inner
        faces.pop(face_idx)
        faces.append(face1)
        faces.append(face2)
        embedded_vertices.update(path)
        for x, y in zip(path, path[1:]):
            embedded_edges.add((x, y) if x < y else (y, x))
    return True


def dmp_planar(g: Graph) -> bool:
    """Own planarity decision, independent of networkx."""
    for comp in _biconnected_components(g):
        if len(comp) >= 3 and not _dmp_component_planar(g.subgraph(comp)):
            return False
    return True


# -- minor search -------------------------------------------------------------


def verify_minor(g: Graph, witness: MinorWitness) -> bool:
    """Re-check a branch-set witness combinatorially on the original graph."""
    sets = witness.branch_sets
    expected = 5 if witness.kind == "K5" else 6
    if len(sets) != expected:
        return False
    all_verts = set()
    for s in sets:
        if not s or not set(s) <= set(g.vertices):
            return False
        if all_verts & set(s):
            return False
        all_verts |= set(s)
        # connectivity of the branch set
        s = set(s)
        comp = {min(s)}
        stack = [min(s)]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w in s and w not in comp:
                    comp.add(w)
                    stack.append(w)
        if comp != s:
            return False
    for i, j in witness.model_edges:
        if not any(g.adjacent(u, v) for u in sets[i] for v in sets[j]):
            return False
    return True


def _reduce_with_trace(g: Graph):
    """Delete degree-<=1 vertices and contract degree-2 vertices.

    Preserves planarity and K5/K33-minor existence in both directions.
    Returns (adjacency dict, trace dict mapping kept vertex -> original set).
    """
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    trace = {v: {v} for v in g.vertices}
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            deg = len(adj[v])
            if deg <= 1:
                for w in adj[v]:
                    adj[w].discard(v)
                del adj[v]
                del trace[v]
                changed = True
            elif deg == 2:
                x, y = sorted(adj[v])
                adj[x].discard(v)
                adj[y].discard(v)
                adj[x].add(y)
                adj[y].add(x)
                trace[x] |= trace[v]
                del adj[v]
                del trace[v]
                changed = True
    return adj, trace


def _graph_from_adj(adj) -> Graph:
    return Graph(adj.keys(), [(u, v) for u in adj for v in adj[u] if u < v])


def _check_model_on_small(adj, kind):
    """Branch-set layout when the contracted graph has 5 or 6 vertices."""
    verts = sorted(adj)
    if kind == "K5":
        if len(verts) != 5:
            return None
        if all(v in adj[u] for u, v in combinations(verts, 2)):
            return tuple(verts)
        return None
    if len(verts) != 6:
        return None
    for left in combinations(verts, 3):
        if verts[0] not in left:
            continue  # each bipartition once
        right = tuple(v for v in verts if v not in left)
        if all(r in adj[l] for l in left for r in right):
            return left + right
    return None


def _greedy_contraction_witness(g: Graph, kind: str):
    """Contract min-degree vertices toward a 5- or 6-vertex model."""
    target = 5 if kind == "K5" else 6
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    trace = {v: {v} for v in g.vertices}
    while len(adj) > target:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        if not adj[v]:
            return None
        u = min(adj[v], key=lambda x: (len(adj[x] & adj[v]), x))
        # contract v into u
        for w in adj[v]:
            adj[w].discard(v)
            if w != u:
                adj[w].add(u)
                adj[u].add(w)
        adj[u].discard(v)
        trace[u] |= trace[v]
        del adj[v]
        del trace[v]
    layout = _check_model_on_small(adj, kind)
    if layout is None:
        return None
    return tuple(frozenset(trace[v]) for v in layout)


def _paths_between(g: Graph, a, b, blocked, max_len):
    """Simple a-b paths with interior outside `blocked`, shortest first."""
    for length in range(1, max_len + 1):
        # DFS for paths of exactly `length` edges
        stack = [(a, (a,))]
        while stack:
            v, path = stack.pop()
            if len(path) - 1 == length:
                if v == b:
                    yield path
                continue
            for w in sorted(g.neighbors(v), reverse=True):
                if w == b and len(path) == length:
                    stack.append((w, path + (w,)))
                elif w != b and w not in blocked and w not in path:
                    stack.append((w, path + (w,)))


def _connect_pairs(g: Graph, pairs, blocked, max_len):
    """Internally-disjoint paths realizing `pairs`, by backtracking."""
    if not pairs:
        return []
    (a, b), rest = pairs[0], pairs[1:]
    for path in _paths_between(g, a, b, blocked, max_len):
        interior = set(path[1:-1])
        sub = _connect_pairs(g, rest, blocked | interior, max_len)
        if sub is not None:
            return [path] + sub
    return None


def _subdivision_witness(g: Graph, kind: str):
    """Complete search for a K5/K33 subdivision, returned as branch sets."""
    min_deg = 4 if kind == "K5" else 3
    candidates = [v for v in g.vertices if g.degree(v) >= min_deg]
    max_len = g.n  # simple paths cannot be longer
    if kind == "K5":
        layouts = [c for c in combinations(candidates, 5)]
        model = K5_EDGES
        k = 5
    else:
        layouts = []
        for combo in combinations(candidates, 6):
            for left in combinations(combo, 3):
                if combo[0] not in left:
                    continue
                right = tuple(v for v in combo if v not in left)
                layouts.append(left + right)
        model = K33_EDGES
        k = 6
    for layout in layouts:
        branch = set(layout)
        pairs = [(layout[i], layout[j]) for i, j in model]
        paths = _connect_pairs(g, pairs, branch, max_len)
        if paths is None:
            continue
        sets = [{layout[i]} for i in range(k)]
        for (i, j), path in zip(model, paths):
            # interior vertices keep the lower-indexed branch set connected
            sets[i].update(path[1:-1])
        return tuple(frozenset(s) for s in sets)
    return None


def find_k5_or_k33_minor(g: Graph) -> Optional[MinorWitness]:
    """Branch sets certifying a K5 or K33 minor, or None if none exists.

    The negative answer is decided by the own DMP planarity test (Wagner's
    theorem); positive answers are searched for and re-verified before
    being returned.
    """
    if g.n < 5 or len(g.edges) < 9:
        return None
    adj, trace = _reduce_with_trace(g)
    rg = _graph_from_adj(adj)
    if rg.n < 5 or len(rg.edges) < 9:
        return None
    if dmp_planar(rg):
        return None
    # restrict the search to one non-planar biconnected component
    target = None
    for comp in _biconnected_components(rg):
        if len(comp) >= 5 and not _dmp_component_planar(rg.subgraph(comp)):
            target = rg.subgraph(comp)
            break
    if target is None:
        raise RuntimeError("non-planar graph with no non-planar block")

    found = None
    for kind in ("K33", "K5"):
        sets = _greedy_contraction_witness(target, kind)
        if sets is not None:
            found = (kind, sets)
            break
    if found is None:
        for kind in ("K33", "K5"):
            sets = _subdivision_witness(target, kind)
            if sets is not None:
                found = (kind, sets)
                break
    if found is None:
        raise RuntimeError("non-planar graph but subdivision search failed")
    kind, sets = found
    lifted = tuple(
        frozenset().union(*(trace[v] for v in s)) for s in sets
    )
    witness = MinorWitness(kind, lifted)
    if not verify_minor(g, witness):
        raise RuntimeError("minor witness failed re-verification")
    return witness
