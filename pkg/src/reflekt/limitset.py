"""Orbit enumeration on the hyperboloid and boundary point clouds.

Words are enumerated breadth-first in ShortLex normal form for the RACG,
so every group element is visited exactly once: a generator g extends a
normal word w unless, after commuting g leftward past commuting letters,
it meets an equal letter (the word would reduce) or a larger commuting
letter (the word would not be ShortLex-minimal).  The per-element automaton
state is a 64-bit forbidden-letter mask, which keeps the frontier fully
vectorized.

Orbit points are projected to the boundary sphere (spatial part over time
coordinate, renormalized) and deduplicated by quantized spatial hashing;
a point whose cell is already occupied is neither emitted nor expanded,
which caps the frontier once shadows shrink below the cell size.

Matrices are float64 by default with a Newton form-restoration step per
multiplication; the recorded Minkowski drift bound genuinely reflects the
stored matrices.  numpy longdouble is available for deeper runs.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

DEFAULT_DEDUP_EPS = 1e-7
GENERATOR_DRIFT_GATE = 1e-6
COMMUTATION_TOLERANCE = 1e-9


@dataclass
class GroupElem:
    """A group element: its matrix and its reduced (ShortLex) word."""

    matrix: np.ndarray
    word: tuple

    def drift(self) -> float:
        return form_defect(self.matrix)


@dataclass
class PointCloud:
    """Boundary points with word lengths and reproducibility metadata."""

    points: np.ndarray          # (N, d) unit vectors
    word_length: np.ndarray     # (N,)
    metadata: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.points)


def minkowski_form(n: int, dtype=np.float64) -> np.ndarray:
    j = np.eye(n, dtype=dtype)
    j[-1, -1] = -1.0
    return j


def form_defect(matrices: np.ndarray) -> float:
    """max |M^T J M - J| over a matrix or batch of matrices."""
    m = np.asarray(matrices)
    single = m.ndim == 2
    if single:
        m = m[None]
    j = minkowski_form(m.shape[-1], m.dtype)
    defect = np.einsum("nji,jk,nkl->nil", m, j, m) - j
    return float(np.abs(defect).max())


def _newton_form_correction(batch: np.ndarray, j: np.ndarray) -> np.ndarray:
    # M <- M (I - E/2) with E = J M^T J M - I; kills the form defect to
    # second order without leaving the group's neighbourhood
    e = np.einsum("ij,njk,kl,nlm->nim", j, batch.transpose(0, 2, 1), j, batch)
    e -= np.eye(batch.shape[-1], dtype=batch.dtype)
    return batch - 0.5 * np.einsum("nij,njk->nik", batch, e)


def default_basepoint(dim: int, dtype=np.float64) -> np.ndarray:
    """A generic hyperboloid point with nonzero, pairwise distinct spatial
    coordinates (so no shipped generator or projection degenerates)."""
    spatial = np.arange(1, dim + 1, dtype=dtype) / 100.0
    time = np.sqrt(1.0 + (spatial ** 2).sum())
    return np.concatenate([spatial, [time]])


def infer_commuting_pairs(generators: np.ndarray) -> frozenset:
    """Pairs (i, j) with g_i g_j = g_j g_i numerically (well separated for
    reflection groups: commutators are either ~0 or order one)."""
    k = len(generators)
    pairs = set()
    for i in range(k):
        for j in range(i + 1, k):
            comm = generators[i] @ generators[j] - generators[j] @ generators[i]
            if np.abs(comm).max() < COMMUTATION_TOLERANCE:
                pairs.add((i, j))
    return frozenset(pairs)


def shortlex_masks(n_gens: int, commuting_pairs) -> tuple:
    """Per-generator automaton masks.

    stamp[g]: letters forbidden right after g regardless of history
    (g itself, plus smaller letters commuting with g).
    filt[g]: letters whose earlier prohibition survives g (larger letters
    commuting with g).
    """
    if n_gens > 64:
        raise ValueError("at most 64 generators supported by the mask automaton")
    comm = [[False] * n_gens for _ in range(n_gens)]
    for i, j in commuting_pairs:
        comm[i][j] = comm[j][i] = True
    stamp = np.zeros(n_gens, dtype=np.uint64)
    filt = np.zeros(n_gens, dtype=np.uint64)
    for g in range(n_gens):
        s = 1 << g
        f = 0
        for h in range(n_gens):
            if h == g or not comm[g][h]:
                continue
            if h < g:
                s |= 1 << h
            else:
                f |= 1 << h
        stamp[g] = s
        filt[g] = f
    return stamp, filt


def word_counts(
    n_gens: int,
    commuting_pairs,
    max_len: int,
) -> list:
    """Number of group elements of each word length 0..max_len.

    Pure automaton enumeration: each element is generated exactly once, so
    the counts are exact with no matrix arithmetic at all.
    """
    stamp, filt = shortlex_masks(n_gens, commuting_pairs)
    counts = [1]
    frontier = np.zeros(1, dtype=np.uint64)
    for _ in range(max_len):
        nxt = []
        for g in range(n_gens):
            bit = np.uint64(1 << g)
            allowed = (frontier & bit) == 0
            if not allowed.any():
                continue
            nxt.append(stamp[g] | (frontier[allowed] & filt[g]))
        if not nxt:
            counts.append(0)
            frontier = np.zeros(0, dtype=np.uint64)
            continue
        frontier = np.concatenate(nxt)
        counts.append(len(frontier))
    return counts


def racg_growth_counts(clique_counts: Sequence[int], max_len: int) -> list:
    """Word-length counts predicted by the clique polynomial of the nerve.

    With N_j simplices of dimension j - 1 (N_0 = 1 for the empty clique),
    the spherical growth series W(t) satisfies
    1/W = sum_j N_j (-t/(1+t))^j; the series is expanded exactly.
    """
    depth = max_len + 1
    # power series of x = t/(1+t) = t - t^2 + t^3 - ...
    x = [Fraction(0)] + [Fraction((-1) ** (n - 1)) for n in range(1, depth)]

    def mul(a, b):
        out = [Fraction(0)] * depth
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if i + j < depth and bj != 0:
                    out[i + j] += ai * bj
        return out

    inv_w = [Fraction(0)] * depth
    inv_w[0] = Fraction(1)
    power = [Fraction(0)] * depth
    power[0] = Fraction(1)
    for j, count in enumerate(clique_counts[1:], start=1):
        power = mul(power, x)
        for n in range(depth):
            inv_w[n] += count * (Fraction(-1) ** j) * power[n]
    # invert the series: W * inv_w = 1
    w = [Fraction(0)] * depth
    w[0] = 1 / inv_w[0]
    for n in range(1, depth):
        acc = Fraction(0)
        for k in range(1, n + 1):
            acc += inv_w[k] * w[n - k]
        w[n] = -acc / inv_w[0]
    assert all(c.denominator == 1 for c in w)
    return [int(c) for c in w]


def element_for_word(generators: np.ndarray, word: Sequence[int]) -> GroupElem:
    mat = np.eye(generators.shape[-1], dtype=generators.dtype)
    for g in word:
        mat = generators[g] @ mat
    return GroupElem(mat, tuple(word))


def project_to_boundary(points: np.ndarray) -> np.ndarray:
    """Spatial part over time coordinate, renormalized to the unit sphere."""
    pts = np.asarray(points)
    single = pts.ndim == 1
    if single:
        pts = pts[None]
    spatial = pts[:, :-1] / pts[:, -1:]
    norms = np.linalg.norm(spatial, axis=1, keepdims=True)
    if (norms == 0).any():
        raise ValueError(
            "basepoint projects to the origin; use a basepoint with a "
            "nonzero spatial part"
        )
    out = spatial / norms
    return out[0] if single else out


def orbit_bfs(
    generators,
    basepoint: Optional[np.ndarray] = None,
    max_len: int = 6,
    dedup_eps: float = DEFAULT_DEDUP_EPS,
    *,
    commuting_pairs=None,
    dtype=np.float64,
    form_correction: bool = True,
    group_id: str = "",
) -> PointCloud:
    """Breadth-first orbit enumeration with boundary deduplication.

    Enumerates ShortLex-reduced words up to max_len; each new element's
    orbit point is projected to the boundary sphere and quantized at
    dedup_eps.  First occupant of a cell wins; later hits are neither
    emitted nor expanded.  Deterministic: depth by depth, generators in
    index order, frontier rows in creation order; the final cloud is sorted
    lexicographically.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    if dedup_eps <= 0:
        raise ValueError("dedup_eps must be positive")
    gens = np.asarray(generators, dtype=dtype)
    n_gens, size, _ = gens.shape
    dim = size - 1
    j = minkowski_form(size, dtype)

    gen_drift = form_defect(gens)
    if gen_drift > GENERATOR_DRIFT_GATE:
        raise ValueError(
            f"generator Minkowski drift {gen_drift:.3e} exceeds "
            f"{GENERATOR_DRIFT_GATE:.0e}; precision too low"
        )
    for idx in range(n_gens):
        if np.abs(gens[idx] @ gens[idx] - np.eye(size, dtype=dtype)).max() > 1e-6:
            raise ValueError(f"generator {idx} is not an involution")

    if basepoint is None:
        basepoint = default_basepoint(dim, dtype)
    basepoint = np.asarray(basepoint, dtype=dtype)
    residual = basepoint[:-1] @ basepoint[:-1] - basepoint[-1] * basepoint[-1]
    if abs(residual + 1.0) > 1e-9:
        raise ValueError(f"basepoint off the hyperboloid: <x,x> = {residual:.3e}")
    if basepoint[-1] <= 0:
        raise ValueError("basepoint must lie on the upper sheet")

    if commuting_pairs is None:
        commuting_pairs = infer_commuting_pairs(gens)
    stamp, filt = shortlex_masks(n_gens, commuting_pairs)

    def quantize(pts):
        return np.round(pts / dedup_eps).astype(np.int64)

    root_point = project_to_boundary(basepoint.astype(np.float64))
    seen = {quantize(root_point[None])[0].tobytes()}
    points = [root_point]
    lengths = [0]

    frontier_mats = np.eye(size, dtype=dtype)[None]
    frontier_forb = np.zeros(1, dtype=np.uint64)
    max_drift = 0.0
    explored = 1

    for depth in range(1, max_len + 1):
        new_mats = []
        new_forb = []
        for g in range(n_gens):
            bit = np.uint64(1 << g)
            allowed = (frontier_forb & bit) == 0
            if not allowed.any():
                continue
            batch = np.einsum("ij,njk->nik", gens[g], frontier_mats[allowed])
            if form_correction:
                batch = _newton_form_correction(batch, j)
            explored += len(batch)
            orbit_pts = batch @ basepoint
            boundary = project_to_boundary(orbit_pts.astype(np.float64))
            keys = quantize(boundary)
            keep = np.zeros(len(batch), dtype=bool)
            for row in range(len(batch)):
                key = keys[row].tobytes()
                if key not in seen:
                    seen.add(key)
                    keep[row] = True
            if not keep.any():
                continue
            kept = batch[keep]
            defect = np.einsum("nji,jk,nkl->nil", kept, j, kept) - j
            max_drift = max(max_drift, float(np.abs(defect).max()))
            new_mats.append(kept)
            new_forb.append(stamp[g] | (frontier_forb[allowed][keep] & filt[g]))
            points.append(boundary[keep])
            lengths.append(np.full(int(keep.sum()), depth, dtype=np.int64))
        if not new_mats:
            frontier_mats = frontier_mats[:0]
            break
        frontier_mats = np.concatenate(new_mats)
        frontier_forb = np.concatenate(new_forb)

    all_points = np.concatenate(
        [p[None] if p.ndim == 1 else p for p in points]
    )
    all_lengths = np.concatenate(
        [np.atleast_1d(np.asarray(l, dtype=np.int64)) for l in lengths]
    )
    order = np.lexsort(all_points.T[::-1])
    all_points = np.ascontiguousarray(all_points[order])
    all_lengths = all_lengths[order]

    metadata = {
        "group": group_id,
        "max_word_length": int(max_len),
        "dedup_eps": float(dedup_eps),
        "count": int(len(all_points)),
        "explored_words": int(explored),
        "drift_bound": float(max_drift),
        "generator_drift": float(gen_drift),
        "dtype": np.dtype(dtype).name,
        "form_correction": bool(form_correction),
        "basepoint": [float(x) for x in basepoint],
    }
    return PointCloud(all_points, all_lengths, metadata)


# -- projections ---------------------------------------------------------------


def stereographic(
    points: np.ndarray,
    pole: Optional[np.ndarray] = None,
    pole_eps: float = 1e-9,
) -> tuple:
    """Stereographic projection of S^(d-1) from a pole to R^(d-1).

    Points within pole_eps of the pole are dropped; returns (projected,
    dropped_count).
    """
    pts = np.asarray(points, dtype=np.float64)
    d = pts.shape[1]
    if pole is None:
        pole = np.zeros(d)
        pole[-1] = 1.0
    pole = np.asarray(pole, dtype=np.float64)
    denom = 1.0 - pts @ pole
    keep = denom > pole_eps
    kept = pts[keep]
    denom = denom[keep][:, None]
    basis = _orthonormal_complement(pole)
    return (kept @ basis.T) / denom, int((~keep).sum())


def stereographic_inverse(
    projected: np.ndarray, pole: Optional[np.ndarray] = None
) -> np.ndarray:
    pts = np.asarray(projected, dtype=np.float64)
    d = pts.shape[1] + 1
    if pole is None:
        pole = np.zeros(d)
        pole[-1] = 1.0
    pole = np.asarray(pole, dtype=np.float64)
    basis = _orthonormal_complement(pole)
    norm_sq = (pts ** 2).sum(axis=1, keepdims=True)
    scale = 2.0 / (norm_sq + 1.0)
    return scale * (pts @ basis) + (1.0 - scale) * pole


def _orthonormal_complement(pole: np.ndarray) -> np.ndarray:
    d = len(pole)
    full = np.eye(d)
    # Gram-Schmidt the coordinate frame against the pole
    vecs = []
    for v in full:
        w = v - (v @ pole) * pole
        for u in vecs:
            w = w - (w @ u) * u
        n = np.linalg.norm(w)
        if n > 1e-9:
            vecs.append(w / n)
    return np.array(vecs[: d - 1])


# -- exports -------------------------------------------------------------------


def export_ply(points3d: np.ndarray, path) -> None:
    """Binary little-endian PLY, one float64 (x, y, z) per vertex."""
    pts = np.ascontiguousarray(np.asarray(points3d, dtype="<f8"))
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError("PLY export expects an (N, 3) array")
    header = (
        "ply\n"
        "format binary_little_endian 1.0\n"
        f"element vertex {len(pts)}\n"
        "property double x\n"
        "property double y\n"
        "property double z\n"
        "end_header\n"
    )
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(pts.tobytes())


def export_csv(cloud: PointCloud, path) -> None:
    """Headered CSV with full ambient coordinates plus word length."""
    d = cloud.points.shape[1] if len(cloud) else 0
    header = ",".join([f"x{k}" for k in range(d)] + ["word_length"])
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(header + "\n")
        for row, wl in zip(cloud.points, cloud.word_length):
            fh.write(",".join("%.17g" % x for x in row) + f",{int(wl)}\n")


def export_png(
    points: np.ndarray,
    path,
    resolution: int = 1024,
    axes: tuple = (0, 1),
    bound: Optional[float] = None,
) -> None:
    """Orthographic projection onto two axes, rasterized as grayscale PNG.

    Density is log-scaled; identical clouds and options give identical
    bytes.
    """
    from PIL import Image

    pts = np.asarray(points, dtype=np.float64)
    if len(pts) == 0:
        img = np.full((resolution, resolution), 255, dtype=np.uint8)
        Image.fromarray(img, mode="L").save(path, format="PNG")
        return
    xy = pts[:, list(axes)]
    if bound is None:
        bound = float(np.abs(xy).max()) or 1.0
    grid = np.clip(
        ((xy + bound) / (2 * bound) * (resolution - 1)).astype(np.int64),
        0,
        resolution - 1,
    )
    counts = np.zeros((resolution, resolution), dtype=np.int64)
    np.add.at(counts, (grid[:, 1], grid[:, 0]), 1)
    log = np.log1p(counts.astype(np.float64))
    peak = log.max() or 1.0
    img = (255 - np.round(log / peak * 255)).astype(np.uint8)
    img = img[::-1]  # y axis upward
    Image.fromarray(img, mode="L").save(path, format="PNG")


def export(cloud: PointCloud, fmt: str, path, **options) -> None:
    """Dispatch to the PLY/CSV/PNG writers; output is bit-deterministic."""
    fmt = fmt.lower()
    if fmt == "csv":
        export_csv(cloud, path)
    elif fmt == "ply":
        pts = cloud.points
        if pts.shape[1] != 3 if len(cloud) else False:
            raise ValueError("project the cloud to 3 dimensions before PLY export")
        if len(cloud) == 0:
            pts = np.zeros((0, 3))
        export_ply(pts, path)
    elif fmt == "png":
        export_png(cloud.points, path, **options)
    else:
        raise ValueError(f"unknown export format: {fmt}")
