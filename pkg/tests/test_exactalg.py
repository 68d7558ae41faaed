"""Tests for exact quadratic-field arithmetic, inertia, SNF, and intervals."""

import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflekt.exactalg import (
    IntervalContext,
    QuadExt,
    SymMatrix,
    exact_rank,
    golden_ratio,
    integer_det,
    matmul_int,
    minimal_polynomial,
    quad_sign,
    signature,
    smith_decomposition,
    smith_normal_form,
)

U = QuadExt(Fraction(27, 50), Fraction(7, 50), 21)
V = QuadExt(Fraction(21, 50), Fraction(11, 50), 21)
W = QuadExt(Fraction(49, 50), Fraction(9, 50), 21)


def rational_st(max_num=30, max_den=7):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def quadext_st(d=21):
    return st.builds(QuadExt, rational_st(), rational_st(), st.just(d))


# -- quad_sign ------------------------------------------------------------


def test_quad_sign_examples():
    assert quad_sign(U - 1) == 1
    assert quad_sign(QuadExt(0, 0, 21)) == 0
    assert quad_sign(QuadExt(Fraction(-1, 2), Fraction(-1, 2), 5)) == -1
    # v, w > 1 as well (ultraparallel mirror condition)
    assert quad_sign(V - 1) == 1
    assert quad_sign(W - 1) == 1


def test_quad_sign_mixed_sign_cases():
    # 7 - 2*sqrt(5): 49 > 20 so positive
    assert quad_sign(QuadExt(7, -2, 5)) == 1
    # 2 - sqrt(5): 4 < 5 so negative
    assert quad_sign(QuadExt(2, -1, 5)) == -1
    # -2 + sqrt(5) positive
    assert quad_sign(QuadExt(-2, 1, 5)) == 1
    # -7 + 2*sqrt(5) negative
    assert quad_sign(QuadExt(-7, 2, 5)) == -1


@given(quadext_st(), quadext_st())
@settings(max_examples=200)
def test_quad_sign_respects_multiplication(x, y):
    assert quad_sign(x * y) == quad_sign(x) * quad_sign(y)
    assert quad_sign(x * x) >= 0


@given(quadext_st())
def test_sign_against_float(x):
    approx = float(x)
    if abs(approx) > 1e-9:
        assert quad_sign(x) == (1 if approx > 0 else -1)


def test_field_axioms_spot():
    phi = golden_ratio()
    assert phi * phi == phi + 1
    assert (1 / phi) == phi - 1
    assert phi ** 2 - phi - 1 == 0
    x = QuadExt(Fraction(2, 3), Fraction(-5, 7), 21)
    assert x * x.inverse() == 1
    assert x + (-x) == 0


def test_field_mismatch_rejected():
    with pytest.raises(ValueError):
        QuadExt(1, 1, 5) + QuadExt(1, 1, 21)


# -- minimal polynomials ---------------------------------------------------


def test_minimal_polynomial_examples():
    mp = minimal_polynomial(QuadExt(0, 1, 21))
    assert mp.coefficients == (Fraction(-21), Fraction(0), Fraction(1))
    assert mp.is_algebraic_integer

    mp = minimal_polynomial(golden_ratio())
    assert mp.coefficients == (Fraction(-1), Fraction(-1), Fraction(1))
    assert mp.is_algebraic_integer

    x = 4 * U * U + 3
    assert x == QuadExt(Fraction(3633, 625), Fraction(378, 625), 21)
    mp = minimal_polynomial(x)
    assert mp.coefficients == (
        Fraction(16317, 625),
        Fraction(-7266, 625),
        Fraction(1),
    )
    assert not mp.is_algebraic_integer


def test_minimal_polynomial_numeric_oracle():
    # Independent check: evaluate the claimed polynomial at a 120-digit
    # numeric value of 4u^2+3 and check the residual, plus the exact root.
    with mpmath.workdps(120):
        s21 = mpmath.sqrt(21)
        u = (27 + 7 * s21) / 50
        x = 4 * u * u + 3
        residual = x * x - mpmath.mpf(7266) / 625 * x + mpmath.mpf(16317) / 625
        assert abs(residual) < mpmath.mpf(10) ** -100
    mp = minimal_polynomial(4 * U * U + 3)
    assert mp.evaluate(4 * U * U + 3) == 0


@given(quadext_st())
def test_minimal_polynomial_annihilates(x):
    assert minimal_polynomial(x).evaluate(x) == 0


# -- signature -------------------------------------------------------------


def test_signature_identity():
    cert = signature(SymMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]], d=5))
    assert (cert.n_plus, cert.n_minus, cert.n_zero) == (3, 0, 0)
    assert cert.replay()


def test_signature_all_minus_u_block():
    rows = [[1 if i == j else -U for j in range(7)] for i in range(7)]
    cert = signature(SymMatrix(rows, d=21))
    assert (cert.n_plus, cert.n_minus, cert.n_zero) == (6, 1, 0)
    assert cert.replay()


def test_signature_zero_diagonal_hyperbolic_pair():
    cert = signature(SymMatrix([[0, 1], [1, 0]], d=5))
    assert (cert.n_plus, cert.n_minus, cert.n_zero) == (1, 1, 0)


def test_signature_rank_deficient():
    # rank-1 projector-like matrix
    cert = signature(SymMatrix([[1, 1], [1, 1]], d=5))
    assert (cert.n_plus, cert.n_minus, cert.n_zero) == (1, 0, 1)


def _random_symmetric(rng, n, d=5):
    entries = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = QuadExt(
                Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
                Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                d,
            )
            entries[i][j] = x
            entries[j][i] = x
    return SymMatrix(entries, d=d)


def _random_invertible(rng, n):
    while True:
        p = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if integer_det(p) != 0:
            return p


def test_signature_congruence_invariance():
    rng = random.Random(20210)
    for _ in range(100):
        m = _random_symmetric(rng, 6)
        p = _random_invertible(rng, 6)
        # P M P^T computed exactly
        pm = [
            [sum(QuadExt(p[i][k], 0, 5) * m[(k, j)] for k in range(6)) for j in range(6)]
            for i in range(6)
        ]
        pmpt = [
            [sum(pm[i][k] * p[j][k] for k in range(6)) for j in range(6)]
            for i in range(6)
        ]
        c1 = signature(m)
        c2 = signature(SymMatrix(pmpt, d=5))
        assert (c1.n_plus, c1.n_minus, c1.n_zero) == (c2.n_plus, c2.n_minus, c2.n_zero)


def test_signature_rank_crosscheck():
    rng = random.Random(7)
    for _ in range(50):
        m = _random_symmetric(rng, 5)
        cert = signature(m)
        assert cert.n_plus + cert.n_minus == exact_rank(m.to_lists())
        assert cert.replay()


# -- Smith normal form -----------------------------------------------------


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 0]]) == [2]
    assert smith_normal_form([[1, 0], [0, 1]]) == [1, 1]


def _moebius_torus_coboundary():
    """Coboundary C^1 -> C^2 of the 7-vertex (minimal) torus triangulation.

    Triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7; built here from scratch
    so the SNF check does not depend on the complex machinery.
    """
    triangles = set()
    for i in range(7):
        triangles.add(tuple(sorted([i, (i + 1) % 7, (i + 3) % 7])))
        triangles.add(tuple(sorted([i, (i + 2) % 7, (i + 3) % 7])))
    triangles = sorted(triangles)
    edges = sorted({(t[a], t[b]) for t in triangles for a, b in ((0, 1), (0, 2), (1, 2))})
    edge_index = {e: k for k, e in enumerate(edges)}
    rows = []
    for t in triangles:
        row = [0] * len(edges)
        # faces of (v0,v1,v2) with alternating signs
        row[edge_index[(t[1], t[2])]] += 1
        row[edge_index[(t[0], t[2])]] -= 1
        row[edge_index[(t[0], t[1])]] += 1
        rows.append(row)
    return rows, len(edges), len(triangles)


def test_snf_torus_coboundary_gives_integral_h2():
    rows, n_edges, n_triangles = _moebius_torus_coboundary()
    assert (n_edges, n_triangles) == (21, 14)
    divisors = smith_normal_form(rows)
    # Oracle: rank by independent exact Gaussian elimination.
    rank = exact_rank([[Fraction(x) for x in row] for row in rows])
    assert len(divisors) == rank == 13
    # H^2 = Z^(14 - rank) + torsion from divisors > 1; the torus has H^2 = Z.
    assert n_triangles - rank == 1
    assert all(d == 1 for d in divisors)


def test_snf_divisibility_and_transforms():
    rng = random.Random(99)
    for _ in range(40):
        n_rows = rng.randint(1, 5)
        n_cols = rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(n_cols)] for _ in range(n_rows)]
        dec = smith_decomposition(m)
        for a, b in zip(dec.divisors, dec.divisors[1:]):
            assert b % a == 0
        assert all(d > 0 for d in dec.divisors)
        assert abs(integer_det(dec.left)) == 1
        assert abs(integer_det(dec.right)) == 1
        assert matmul_int(dec.left, matmul_int(m, dec.right)) == dec.smith
        # S is diagonal with the divisors as its nonzero entries
        for i, row in enumerate(dec.smith):
            for j, x in enumerate(row):
                if i == j and i < len(dec.divisors):
                    assert x == dec.divisors[i]
                else:
                    assert x == 0


# -- intervals ---------------------------------------------------------------


def test_interval_enclosure_and_nesting():
    values = [U, V, W, golden_ratio(), QuadExt(Fraction(-3, 7), Fraction(2, 9), 5)]
    prev = None
    for bits in (64, 128, 256, 512):
        ctx = IntervalContext(bits)
        for x in values:
            enc = ctx.from_quadext(x)
            assert enc.contains_exact(x)
        enc_u = ctx.from_quadext(U)
        if prev is not None:
            # refining precision nests the enclosure
            wide = IntervalContext(64).convert(enc_u)
            assert wide.intersects(prev)
            assert enc_u.width() <= prev.width()
        prev = IntervalContext(64).convert(enc_u)


def test_interval_exact_decisions():
    ctx = IntervalContext(128)
    third = ctx.from_fraction(Fraction(1, 3))
    assert third.contains_exact(Fraction(1, 3))
    # 128-bit enclosures are ~1e-38 wide, so a 1e-30 bump falls outside
    assert third.excludes_exact(Fraction(1, 3) + Fraction(1, 10**30))
    y_sq = 3 * (ctx.from_quadext(QuadExt(Fraction(11, 25), Fraction(1, 25), 21))) \
        - ctx.from_quadext(QuadExt(Fraction(8, 25), Fraction(3, 25), 21))
    assert y_sq.contains_exact(1)


def test_interval_trig_enclosures():
    ctx = IntervalContext(256)
    for m in (1, 4, 5):
        c = ctx.cos(ctx.pi() * 2 * m / 21)
        s = ctx.sin(ctx.pi() * 2 * m / 21)
        assert (c * c + s * s).contains_exact(1)
        assert (c * c + s * s).width() < 1e-70


def test_interval_precision_floor():
    with pytest.raises(ValueError):
        IntervalContext(1)
