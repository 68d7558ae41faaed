"""The 21-vertex torus nerve and its reflection group in O(6,1).

The nerve is the flag complex of the circulant graph C_21(1, 4, 5): a
flag-no-square triangulation of the 2-torus.  Its Gram matrix A over
Q(sqrt(21)) is filled by residue class of |i - j| mod 21 and certified to
have rank 7 and signature (6, 1, 14) by exact congruence.  The order-21
rotation sigma and the space-like vector y realize the group in O(6,1);
those matrices involve cos(2 m pi / 21) and nested radicals, so their
identities are certified by interval arithmetic at configurable precision
with the residual bound recorded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactalg import (
    IntervalContext,
    QuadExt,
    SymMatrix,
    exact_rank,
    minimal_polynomial,
    quad_sign,
    signature,
)
from .scomplex import (
    Graph,
    SComplex,
    classify_closed_surface,
    flag_complex_from_graph,
    is_flag_no_square,
    link,
)

GROUP_ID = "gamma6"

N_GENERATORS = 21
DIFFERENCE_SET = (1, 4, 5)

U_VALUE = QuadExt(Fraction(27, 50), Fraction(7, 50), 21)
V_VALUE = QuadExt(Fraction(21, 50), Fraction(11, 50), 21)
W_VALUE = QuadExt(Fraction(49, 50), Fraction(9, 50), 21)

# alpha^2 = (11 + sqrt(21))/25 and beta^2 = (8 + 3 sqrt(21))/25; then
# <y, y> = 3 alpha^2 - beta^2 = 1 exactly.
ALPHA_SQ = QuadExt(Fraction(11, 25), Fraction(1, 25), 21)
BETA_SQ = QuadExt(Fraction(8, 25), Fraction(3, 25), 21)

ROTATION_BLOCKS = (1, 4, 5)


class VerificationError(RuntimeError):
    pass


def _distance_class(i: int, j: int) -> int:
    r = abs(i - j) % 21
    return min(r, 21 - r)


@dataclass(frozen=True)
class T21Nerve:
    complex: SComplex
    difference_set: tuple

    @property
    def graph(self) -> Graph:
        return self.complex.skeleton_graph()


def build_t21() -> T21Nerve:
    """The flag complex of C_21(1, 4, 5), verified to be a torus nerve.

    Vertices are labelled 1..21; i and j are adjacent iff |i - j| is
    congruent to +-1, +-4 or +-5 mod 21.  Verifies the f-vector (21, 63,
    42), flag-no-square, the orientable genus-1 classification, and that
    every vertex link is a 6-cycle.
    """
    vertices = range(1, 22)
    edges = [
        (i, j)
        for i in vertices
        for j in vertices
        if i < j and _distance_class(i, j) in DIFFERENCE_SET
    ]
    complex_ = flag_complex_from_graph(Graph(vertices, edges))
    f = complex_.f_vector()
    if f != (21, 63, 42):
        raise VerificationError(f"f-vector {f} != (21, 63, 42)")
    ok, witness = is_flag_no_square(complex_)
    if not ok:
        raise VerificationError(f"not flag-no-square: {witness}")
    sc = classify_closed_surface(complex_)
    if not (sc.is_closed_surface and sc.orientable and sc.euler_characteristic == 0):
        raise VerificationError(f"not an orientable torus: {sc}")
    for v in range(1, 22):
        lk = link(complex_, (v,))
        g = lk.skeleton_graph()
        if not (
            len(g.vertices) == 6
            and len(g.edges) == 6
            and all(g.degree(w) == 2 for w in g.vertices)
            and g.is_connected()
        ):
            raise VerificationError(f"link of vertex {v} is not a 6-cycle")
    return T21Nerve(complex_, DIFFERENCE_SET)


@dataclass(frozen=True)
class GramA:
    matrix: SymMatrix
    u: QuadExt
    v: QuadExt
    w: QuadExt


def build_gram_a() -> GramA:
    """The 21 x 21 Gram matrix over Q(sqrt(21)).

    Entry pattern by distance class of |i - j| mod 21: 0 on the adjacency
    classes {1, 4, 5}, -u on {3, 6, 9}, -v on {2, 8, 10}, -w on {7}.
    The zero pattern is asserted to match the nerve's adjacency.
    """
    zero = QuadExt(0, 0, 21)
    one = QuadExt(1, 0, 21)
    by_class = {0: one}
    for c in (1, 4, 5):
        by_class[c] = zero
    for c in (3, 6, 9):
        by_class[c] = -U_VALUE
    for c in (2, 8, 10):
        by_class[c] = -V_VALUE
    by_class[7] = -W_VALUE
    rows = [
        [by_class[_distance_class(i, j)] for j in range(1, 22)]
        for i in range(1, 22)
    ]
    matrix = SymMatrix(rows, d=21)
    nerve_graph = build_t21().graph
    for i in range(1, 22):
        for j in range(i + 1, 22):
            if nerve_graph.adjacent(i, j) != matrix[(i - 1, j - 1)].is_zero():
                raise VerificationError(
                    f"Gram zero-pattern mismatch at ({i}, {j})"
                )
    return GramA(matrix, U_VALUE, V_VALUE, W_VALUE)


def certify_gram_a(gram: GramA | None = None) -> dict:
    """Exact rank-7, signature-(6,1,14), and u, v, w > 1 certificate."""
    gram = gram or build_gram_a()
    cert = signature(gram.matrix)
    rank = exact_rank(gram.matrix.to_lists())
    checks = {
        "signature_6_1_14": {
            "pass": (cert.n_plus, cert.n_minus, cert.n_zero) == (6, 1, 14)
            and cert.replay(),
            "signature": [cert.n_plus, cert.n_minus, cert.n_zero],
        },
        "rank_7": {"pass": rank == 7, "rank": rank},
        "u_v_w_greater_than_one": {
            "pass": all(
                quad_sign(x - 1) == 1 for x in (gram.u, gram.v, gram.w)
            ),
            "u": gram.u.to_json(),
            "v": gram.v.to_json(),
            "w": gram.w.to_json(),
        },
    }
    return {
        "checks": checks,
        "pivots": cert.to_json()["pivots"],
        "pass": all(c["pass"] for c in checks.values()),
    }


# -- sigma, y, and the 21 reflections -----------------------------------------


@dataclass
class SigmaY:
    sigma: list          # 7x7 interval matrix
    sigma_inv: list      # exact transpose of sigma (sigma is orthogonal-block)
    y: list              # 7-vector of intervals
    precision: int
    context: IntervalContext


def _iv_matmul(a, b):
    n = len(a)
    m = len(b[0])
    inner = len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for k in range(1, inner):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def _iv_matvec(a, v):
    out = []
    for row in a:
        acc = row[0] * v[0]
        for k in range(1, len(v)):
            acc = acc + row[k] * v[k]
        out.append(acc)
    return out


def _iv_minkowski(u, v):
    acc = u[0] * v[0]
    for k in range(1, 6):
        acc = acc + u[k] * v[k]
    return acc - u[6] * v[6]


def _iv_identity(ctx, n=7):
    return [
        [ctx.one() if i == j else ctx.zero() for j in range(n)]
        for i in range(n)
    ]


def build_sigma_y(precision: int = 256) -> SigmaY:
    """sigma = block diag(R_1, R_4, R_5, 1) and y = (a, 0, a, 0, a, 0, b).

    R_m is the rotation by 2 m pi / 21; a = sqrt((11 + sqrt(21))/25) and
    b = sqrt((8 + 3 sqrt(21))/25).  Verifies <y, y> encloses 1 and
    sigma^T J sigma encloses J.
    """
    if precision < 128:
        raise ValueError("precision must be at least 128 bits")
    ctx = IntervalContext(precision)
    two_pi = ctx.pi() * 2
    sigma = _iv_identity(ctx)
    for blk, m in enumerate(ROTATION_BLOCKS):
        c = ctx.cos(two_pi * m / 21)
        s = ctx.sin(two_pi * m / 21)
        i = 2 * blk
        sigma[i][i] = c
        sigma[i][i + 1] = -s
        sigma[i + 1][i] = s
        sigma[i + 1][i + 1] = c
    sigma_inv = [[sigma[j][i] for j in range(7)] for i in range(7)]
    alpha = ctx.from_quadext(ALPHA_SQ).sqrt()
    beta = ctx.from_quadext(BETA_SQ).sqrt()
    z = ctx.zero()
    y = [alpha, z, alpha, z, alpha, z, beta]

    norm = _iv_minkowski(y, y)
    if not norm.contains_exact(1):
        raise VerificationError("<y, y> does not enclose 1")
    # sigma^T J sigma must enclose J
    jsigma = [list(row) for row in sigma]
    jsigma[6] = [-x for x in jsigma[6]]
    stjs = _iv_matmul(sigma_inv, jsigma)  # sigma^T (J sigma)
    for i in range(7):
        for j in range(7):
            target = 0
            if i == j:
                target = -1 if i == 6 else 1
            if not stjs[i][j].contains_exact(target):
                raise VerificationError("sigma does not preserve the form")
    return SigmaY(sigma, sigma_inv, y, precision, ctx)


def _reflection_in(ctx, vec):
    """r(x) = x - 2 <v, x> v for the Minkowski form diag(1,...,1,-1)."""
    jvec = list(vec[:6]) + [-vec[6]]
    rows = []
    for a in range(7):
        row = []
        for b in range(7):
            val = -2 * vec[a] * jvec[b]
            if a == b:
                val = val + 1
            row.append(val)
        rows.append(row)
    return rows


@dataclass
class H6Realization:
    reflections: list     # s_1 .. s_21 as interval matrices
    sigma_y: SigmaY
    y_orbit: list         # sigma^(k-1) y for k = 1..21


def h6_reflections(sy: SigmaY) -> H6Realization:
    """s_k = reflection in sigma^(k-1) y; involution and form checks."""
    ctx = sy.context
    orbit = [list(sy.y)]
    for _ in range(20):
        orbit.append(_iv_matvec(sy.sigma, orbit[-1]))
    reflections = [_reflection_in(ctx, v) for v in orbit]
    for k, r in enumerate(reflections):
        rr = _iv_matmul(r, r)
        for i in range(7):
            for j in range(7):
                if not rr[i][j].contains_exact(1 if i == j else 0):
                    raise VerificationError(
                        f"s_{k + 1}^2 does not enclose the identity"
                    )
    return H6Realization(reflections, sy, orbit)


def sigma_power_report(sy: SigmaY) -> dict:
    """sigma^21 must enclose the identity; sigma^3 and sigma^7 must not."""
    powers = {1: sy.sigma}
    cur = sy.sigma
    for k in range(2, 22):
        cur = _iv_matmul(cur, sy.sigma)
        powers[k] = cur

    def encloses_identity(mat):
        return all(
            mat[i][j].contains_exact(1 if i == j else 0)
            for i in range(7)
            for j in range(7)
        )

    def excludes_identity(mat):
        return any(
            mat[i][j].excludes_exact(1 if i == j else 0)
            for i in range(7)
            for j in range(7)
        )

    report = {
        "sigma21_is_identity": {"pass": encloses_identity(powers[21])},
        "sigma3_not_identity": {"pass": excludes_identity(powers[3])},
        "sigma7_not_identity": {"pass": excludes_identity(powers[7])},
    }
    report["pass"] = all(v["pass"] for v in report.values() if isinstance(v, dict))
    return report


def verify_identities(
    sy: SigmaY,
    gram: GramA | None = None,
    tol: float = 1e-30,
) -> dict:
    """Certify <sigma^(i-1) y, sigma^(j-1) y> = A_ij and the conjugation
    relations s_k = sigma^(k-1) s_1 sigma^(1-k).

    Every interval must intersect the enclosure of the exact entry (the
    identities are exact, so a miss at any precision disproves them) and
    be narrower than tol.  Non-intersection raises; the report carries the
    largest interval width seen.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    gram = gram or build_gram_a()
    ctx = sy.context
    realization = h6_reflections(sy)
    orbit = realization.y_orbit
    max_width = 0.0
    for i in range(21):
        for j in range(i, 21):
            enc = _iv_minkowski(orbit[i], orbit[j])
            exact = gram.matrix[(i, j)]
            max_width = max(max_width, enc.width())
            if not enc.contains_exact(exact):
                raise VerificationError(
                    f"<sigma^{i} y, sigma^{j} y> does not enclose A[{i+1}][{j+1}]"
                )
    # conjugation: s_k = sigma^(k-1) s_1 sigma^(-(k-1)), entrywise overlap
    conj = realization.reflections[0]
    for k in range(1, 21):
        conj = _iv_matmul(sy.sigma, _iv_matmul(conj, sy.sigma_inv))
        direct = realization.reflections[k]
        for a in range(7):
            for b in range(7):
                if not conj[a][b].intersects(direct[a][b]):
                    raise VerificationError(
                        f"conjugation relation fails for s_{k + 1}"
                    )
                max_width = max(max_width, conj[a][b].width(), direct[a][b].width())
    powers = sigma_power_report(sy)
    ok = max_width < tol and powers["pass"]
    return {
        "checks": {
            "pair_inner_products_match_gram": {"pass": True, "pairs": 231},
            "conjugation_relations": {"pass": True},
            "max_interval_width": {"pass": max_width < tol, "value": max_width},
            "sigma_powers": powers,
        },
        "precision_bits": sy.precision,
        "residual_bound": max_width,
        "tolerance": tol,
        "pass": ok,
    }


def certify_nonintegrality(sy: SigmaY | None = None) -> dict:
    """The trace obstruction: 4u^2 + 3 is not an algebraic integer.

    Checks the exact identity 4u^2 + 3 = (21/625)(173 + 18 sqrt(21)), the
    non-integrality of its minimal polynomial, the trace formula
    tr(s_i s_j) = 3 + 4 <u_i, u_j>^2 on an interval instance, and the
    signature (6,1,0) of each 7 x 7 principal submatrix A_j on the residue
    class {k = j mod 3}.
    """
    u = U_VALUE
    value = 4 * u * u + 3
    target = QuadExt(Fraction(21 * 173, 625), Fraction(21 * 18, 625), 21)
    mp = minimal_polynomial(value)
    checks = {
        "trace_value_identity": {
            "pass": value == target,
            "value": value.to_json(),
        },
        "minimal_polynomial_not_integral": {
            "pass": (not mp.is_algebraic_integer)
            and mp.coefficients
            == (Fraction(16317, 625), Fraction(-7266, 625), Fraction(1)),
            "coefficients": [[c.numerator, c.denominator] for c in mp.coefficients],
        },
    }

    gram = build_gram_a()
    classes = {}
    for j in (1, 2, 3):
        members = [k for k in range(1, 22) if k % 3 == j % 3]
        classes[j] = members
        sub = gram.matrix.submatrix([k - 1 for k in members])
        off_ok = all(
            sub[(a, b)] == -u for a in range(7) for b in range(7) if a != b
        )
        cert = signature(sub)
        checks[f"submatrix_class_{j}_signature_6_1_0"] = {
            "pass": off_ok
            and (cert.n_plus, cert.n_minus, cert.n_zero) == (6, 1, 0),
            "members": members,
        }
    # the three classes partition 1..21 into independent sets of the nerve
    nerve = build_t21().graph
    partition_ok = sorted(sum(classes.values(), [])) == list(range(1, 22))
    independent_ok = all(
        not nerve.adjacent(a, b)
        for members in classes.values()
        for a in members
        for b in members
        if a < b
    )
    checks["residue_classes_partition_into_independent_sets"] = {
        "pass": partition_ok and independent_ok,
    }

    sy = sy or build_sigma_y()
    realization = h6_reflections(sy)
    product = _iv_matmul(realization.reflections[0], realization.reflections[3])
    trace = product[0][0]
    for k in range(1, 7):
        trace = trace + product[k][k]
    # A[1][4] = -u, so tr(s_1 s_4) = 3 + 4 u^2 = value
    checks["trace_formula_on_s1_s4"] = {
        "pass": trace.contains_exact(value),
        "interval": trace.format_endpoints(30),
    }
    return {
        "checks": checks,
        "pass": all(c["pass"] for c in checks.values()),
    }


def verify_gamma6(precision: int = 256, tol: float = 1e-30) -> dict:
    """Full certificate for the 21-generator reflection group in H^6."""
    checks = {}
    try:
        build_t21()
        checks["nerve_torus_21_63_42"] = {"pass": True, "f_vector": [21, 63, 42]}
    except VerificationError as exc:
        checks["nerve_torus_21_63_42"] = {"pass": False, "error": str(exc)}

    gram_report = certify_gram_a()
    checks["gram_matrix"] = gram_report

    sy = build_sigma_y(precision)
    identity_report = verify_identities(sy, tol=tol)
    checks["rotation_identities"] = identity_report

    nonint = certify_nonintegrality(sy)
    checks["nonintegrality"] = nonint

    from .scomplex import pcd

    nerve = build_t21()
    nerve_pcd = pcd(nerve.complex)
    checks["nerve_pcd_2"] = {"pass": nerve_pcd == 2, "pcd": nerve_pcd}

    return {
        "group": GROUP_ID,
        "precision_bits": precision,
        "checks": checks,
        "pass": all(c["pass"] for c in checks.values()),
    }


def reflection_generators_float(order: Sequence[int] | None = None) -> np.ndarray:
    """float64 generators s_1..s_21 for orbit enumeration."""
    s21 = 21 ** 0.5
    alpha = ((11 + s21) / 25) ** 0.5
    beta = ((8 + 3 * s21) / 25) ** 0.5
    sigma = np.eye(7)
    for blk, m in enumerate(ROTATION_BLOCKS):
        t = 2 * np.pi * m / 21
        i = 2 * blk
        sigma[i, i] = np.cos(t)
        sigma[i, i + 1] = -np.sin(t)
        sigma[i + 1, i] = np.sin(t)
        sigma[i + 1, i + 1] = np.cos(t)
    y = np.array([alpha, 0.0, alpha, 0.0, alpha, 0.0, beta])
    mats = np.empty((21, 7, 7))
    v = y.copy()
    for k in range(21):
        jv = v.copy()
        jv[6] = -jv[6]
        mats[k] = np.eye(7) - 2.0 * np.outer(v, jv)
        v = sigma @ v
    if order is not None:
        mats = mats[list(order)]
    return mats
