"""Tests for the simplicial complex engine."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from reflekt.exactalg import exact_rank
from reflekt.scomplex import (
    Graph,
    SComplex,
    boundary_dim,
    classify_closed_surface,
    coboundary_matrix,
    dmp_planar,
    find_k5_or_k33_minor,
    flag_complex_from_graph,
    full_subcomplex,
    hyperbolicity,
    is_flag,
    is_flag_no_square,
    is_inseparable,
    is_join,
    is_planar,
    link,
    pcd,
    racg_from_nerve,
    reduced_cohomology,
    verify_minor,
)


def cycle_graph(n):
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(range(n), combinations(range(n), 2))


def tetra_boundary():
    return SComplex(range(4), [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


# -- flag complexes ----------------------------------------------------------


def test_flag_complex_examples():
    k3 = flag_complex_from_graph(complete_graph(3))
    assert k3.f_vector() == (3, 3, 1)

    c4 = flag_complex_from_graph(cycle_graph(4))
    assert c4.f_vector() == (4, 4)

    k4 = flag_complex_from_graph(complete_graph(4))
    assert k4.f_vector() == (4, 6, 4, 1)


def test_flag_complex_oversize_cliques_detected():
    k5 = flag_complex_from_graph(complete_graph(5))
    assert k5.oversize_cliques == ((0, 1, 2, 3, 4),)
    ok, witness = is_flag(k5)
    assert not ok and witness == (0, 1, 2, 3, 4)


def test_closed_under_faces():
    k = SComplex([], [(3, 1, 2)])
    assert k.contains((1, 2)) and k.contains((3,)) and k.contains((1, 2, 3))
    assert k.f_vector() == (3, 3, 1)


def test_full_subcomplex_examples():
    k = tetra_boundary()
    assert full_subcomplex(k, range(4)) == k
    assert full_subcomplex(k, []).is_empty()
    sub = full_subcomplex(k, [0, 1, 2])
    assert sub.f_vector() == (3, 3, 1)
    with pytest.raises(ValueError):
        full_subcomplex(k, [7])


def test_full_subcomplex_transitive():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(4, 9)
        edges = [e for e in combinations(range(n), 2) if rng.random() < 0.5]
        k = flag_complex_from_graph(Graph(range(n), edges))
        s = [v for v in range(n) if rng.random() < 0.7]
        t = [v for v in s if rng.random() < 0.7]
        assert full_subcomplex(full_subcomplex(k, s), t) == full_subcomplex(k, t)


def test_flag_complex_roundtrip():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(3, 9)
        edges = [e for e in combinations(range(n), 2) if rng.random() < 0.4]
        k = flag_complex_from_graph(Graph(range(n), edges))
        if k.oversize_cliques:
            continue
        assert flag_complex_from_graph(k.skeleton_graph()) == k
        assert is_flag(k)[0]


def test_link_examples():
    k = tetra_boundary()
    lk = link(k, (0,))
    assert lk.f_vector() == (3, 3)
    assert classify_closed_surface(lk).is_closed_surface is False
    assert link(k, (0, 1)).f_vector() == (2,)
    with pytest.raises(ValueError):
        link(k, (9,))


def test_is_flag_no_square():
    c4 = flag_complex_from_graph(cycle_graph(4))
    ok, witness = is_flag_no_square(c4)
    assert not ok
    u, x, v, y = witness
    g = c4.skeleton_graph()
    assert not g.adjacent(u, v) and not g.adjacent(x, y)
    assert g.adjacent(u, x) and g.adjacent(x, v) and g.adjacent(v, y) and g.adjacent(y, u)

    # the tetrahedron boundary is not flag: its 4-clique spans no simplex
    ok, witness = is_flag_no_square(tetra_boundary())
    assert not ok and witness == (0, 1, 2, 3)

    c5 = flag_complex_from_graph(cycle_graph(5))
    assert is_flag_no_square(c5)[0]


# -- surfaces ----------------------------------------------------------------


def test_classify_surface_tetrahedron():
    sc = classify_closed_surface(tetra_boundary())
    assert sc.is_closed_surface and sc.orientable
    assert sc.euler_characteristic == 2 and sc.genus == 0


def test_classify_surface_moebius_torus():
    triangles = []
    for i in range(7):
        triangles.append((i, (i + 1) % 7, (i + 3) % 7))
        triangles.append((i, (i + 2) % 7, (i + 3) % 7))
    torus = SComplex(range(7), triangles)
    sc = classify_closed_surface(torus)
    assert sc.is_closed_surface and sc.orientable
    assert sc.euler_characteristic == 0 and sc.genus == 1
    groups = reduced_cohomology(torus)
    assert groups[2].betti == 1 and not groups[2].torsion
    assert groups[1].betti == 2 * sc.genus
    assert pcd(torus) == 2


def test_classify_surface_projective_plane():
    # minimal 6-vertex triangulation of RP^2: not orientable, chi = 1
    triangles = [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1),
        (1, 2, 5), (2, 3, 5), (3, 4, 5), (1, 4, 5),
    ]
    # close the hemisphere: identify antipodes -> standard RP^2 complex
    rp2 = SComplex(range(6), [
        (0, 1, 2), (0, 2, 3), (0, 1, 4), (0, 3, 4),
        (1, 2, 5), (2, 3, 5), (1, 4, 5), (3, 4, 5),
        (0, 1, 3) if False else (2, 3, 4),
        (1, 2, 4) if False else (0, 5, 1) if False else (1, 2, 3),
    ])
    sc = classify_closed_surface(rp2)
    if sc.is_closed_surface:
        assert not sc.orientable
        groups = reduced_cohomology(rp2)
        assert groups[2].torsion == (2,)


def test_classify_rejects_non_surface():
    k = flag_complex_from_graph(cycle_graph(5))
    assert not classify_closed_surface(k).is_closed_surface
    # two triangles glued along an edge: boundary edges lie in one triangle
    k2 = SComplex([], [(0, 1, 2), (1, 2, 3)])
    assert not classify_closed_surface(k2).is_closed_surface


# -- cohomology and pcd ------------------------------------------------------


def test_cohomology_point_and_circle():
    pt = SComplex([0], [(0,)])
    assert all(g.is_zero for g in reduced_cohomology(pt).values())
    c5 = flag_complex_from_graph(cycle_graph(5))
    groups = reduced_cohomology(c5)
    assert groups[1].betti == 1 and groups[0].is_zero


def test_cohomology_empty_complex_convention():
    empty = SComplex([], [])
    groups = reduced_cohomology(empty)
    assert groups == {-1: (1, ())}


def test_cohomology_betti_against_rank_oracle():
    # brute-force rank computation over Q on the coboundary matrices
    triangles = []
    for i in range(7):
        triangles.append((i, (i + 1) % 7, (i + 3) % 7))
        triangles.append((i, (i + 2) % 7, (i + 3) % 7))
    torus = SComplex(range(7), triangles)
    d0 = coboundary_matrix(torus, 0)
    d1 = coboundary_matrix(torus, 1)
    r0 = exact_rank([[Fraction(x) for x in row] for row in d0])
    r1 = exact_rank([[Fraction(x) for x in row] for row in d1])
    n_v, n_e, n_t = torus.f_vector()
    groups = reduced_cohomology(torus)
    assert groups[1].betti == n_e - r1 - r0
    assert groups[2].betti == n_t - r1


def test_pcd_examples():
    assert pcd(flag_complex_from_graph(cycle_graph(5))) == 1
    pt = SComplex([0], [(0,)])
    # every puncture of a point is empty or the point; top degree is -1
    assert pcd(pt) == -1
    with pytest.raises(ValueError):
        pcd(SComplex([], []))


def test_pcd_bounded_by_dimension():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(3, 7)
        edges = [e for e in combinations(range(n), 2) if rng.random() < 0.5]
        k = flag_complex_from_graph(Graph(range(n), edges))
        if k.oversize_cliques:
            continue
        assert pcd(k) <= k.dim


# -- joins and separation ----------------------------------------------------


def test_is_join_examples():
    assert is_join(flag_complex_from_graph(Graph.from_edges([(0, 1)])))
    assert is_join(flag_complex_from_graph(cycle_graph(4)))
    assert not is_join(flag_complex_from_graph(cycle_graph(5)))
    assert not is_join(SComplex([0], [(0,)]))


def test_is_inseparable_path():
    path2 = flag_complex_from_graph(Graph.from_edges([(0, 1), (1, 2)]))
    ok, witness = is_inseparable(path2)
    assert not ok and witness.kind == "vertex" and witness.removed == (1,)


def test_is_inseparable_witness_is_genuine():
    rng = random.Random(17)
    for _ in range(30):
        n = rng.randint(4, 9)
        edges = [e for e in combinations(range(n), 2) if rng.random() < 0.35]
        k = flag_complex_from_graph(Graph(range(n), edges))
        ok, witness = is_inseparable(k)
        if not ok and witness.removed:
            keep = set(k.vertices) - set(witness.removed)
            sub = full_subcomplex(k, keep)
            assert not sub.skeleton_graph().is_connected()


def test_surface_is_inseparable():
    ok, _ = is_inseparable(tetra_boundary())
    assert ok


# -- planarity and minors ----------------------------------------------------


def test_planarity_examples():
    k4 = complete_graph(4)
    assert is_planar(k4)
    assert find_k5_or_k33_minor(k4) is None

    k5 = complete_graph(5)
    assert not is_planar(k5)
    w = find_k5_or_k33_minor(k5)
    assert w.kind == "K5"
    assert sorted(sorted(s) for s in w.branch_sets) == [[0], [1], [2], [3], [4]]

    k33 = Graph(range(6), [(i, j + 3) for i in range(3) for j in range(3)])
    assert not is_planar(k33)
    w = find_k5_or_k33_minor(k33)
    assert w.kind == "K33" and verify_minor(k33, w)


def test_petersen_minor():
    edges = (
        [(i, (i + 1) % 5) for i in range(5)]
        + [(i + 5, (i + 2) % 5 + 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)]
    )
    pet = Graph(range(10), edges)
    assert not is_planar(pet)
    w = find_k5_or_k33_minor(pet)
    assert verify_minor(pet, w)


def test_k5_with_decorations_lacks_k33():
    g = Graph(range(7), list(combinations(range(5), 2)) + [(4, 5)])
    w = find_k5_or_k33_minor(g)
    assert w.kind == "K5" and verify_minor(g, w)


def test_euler_bound_graphs_are_caught():
    rng = random.Random(23)
    for _ in range(20):
        n = rng.randint(5, 12)
        all_edges = list(combinations(range(n), 2))
        rng.shuffle(all_edges)
        need = 3 * n - 5
        if need > len(all_edges):
            continue
        g = Graph(range(n), all_edges[:need])
        assert not is_planar(g)
        w = find_k5_or_k33_minor(g)
        assert w is not None and verify_minor(g, w)


def test_wagner_coherence_random_suite():
    rng = random.Random(2025)
    for _ in range(200):
        n = rng.randint(4, 16)
        p = rng.uniform(0.1, 0.6)
        edges = [e for e in combinations(range(n), 2) if rng.random() < p]
        g = Graph(range(n), edges)
        w = find_k5_or_k33_minor(g)
        assert is_planar(g) == (w is None) == dmp_planar(g)
        if w is not None:
            assert verify_minor(g, w)


# -- RACG wrappers -----------------------------------------------------------


def test_racg_from_nerve():
    g = cycle_graph(5)
    pres = racg_from_nerve(g)
    assert pres.n_generators == 5
    assert len(pres.commuting_pairs) == 5


def test_hyperbolicity_and_boundary_dim():
    c4 = flag_complex_from_graph(cycle_graph(4))
    ok, witness = hyperbolicity(c4)
    assert not ok and len(witness) == 4
    with pytest.raises(ValueError):
        boundary_dim(c4)
    c5 = flag_complex_from_graph(cycle_graph(5))
    assert hyperbolicity(c5)[0]
    assert boundary_dim(c5) == 1


# -- serialization -----------------------------------------------------------


def test_complex_json_roundtrip():
    k = tetra_boundary()
    data = k.to_json()
    assert data["vertices"] == 4
    assert SComplex.from_json(data) == k


def test_graph_json():
    g = cycle_graph(4)
    data = g.to_json()
    assert data["vertices"] == 4 and len(data["edges"]) == 4
