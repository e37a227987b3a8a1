"""Point distributions and the separation-driven degree rule.

Generators cover equispaced 1D grids and their midpoints, 2D tensor grids,
tensor grids clipped to an annulus, polar (annular) grids, and greedy maximal
packings on the unit sphere.  ``select_degree`` turns a point set into the
polynomial degree used for interpolation: the arccos mesh norm on intervals
(applied per coordinate on planar domains) and ceil(pi / separation) on the
sphere.
"""

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist

DOMAIN_TAGS = ("interval", "square", "annulus_region", "sphere")

#: Default annular bounds used throughout the benchmark tables.
DEFAULT_R_IN = 0.5
DEFAULT_R_OUT = 1.0


@dataclass(frozen=True, eq=False)
class PointSet:
    """Scattered nodes on one of the supported domains.

    ``points`` is (n,) for the interval, (n, 2) for planar domains, (n, 3)
    unit vectors for the sphere.  Distances are Euclidean except on the
    sphere, where the geodesic metric arccos(x . y) applies.  ``annulus``
    records (r_in, r_out) for annulus-region sets so the invariant can be
    checked.
    """

    domain_tag: str
    points: np.ndarray
    annulus: tuple = field(default=None)

    def __post_init__(self):
        if self.domain_tag not in DOMAIN_TAGS:
            raise ValueError(f"unknown domain {self.domain_tag!r}")
        pts = np.asarray(self.points, dtype=np.float64)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.shape[0]


def validate_point_set(ps):
    """Raise ValueError when a PointSet invariant is violated."""
    pts = ps.points
    expected_ndim = {"interval": 1, "square": 2, "annulus_region": 2, "sphere": 3}[ps.domain_tag]
    coords = pts if pts.ndim == 2 else pts[:, None]
    if pts.ndim != (1 if expected_ndim == 1 else 2) or coords.shape[1] != expected_ndim:
        raise ValueError(f"{ps.domain_tag} points have wrong shape {pts.shape}")
    if len(ps) >= 2 and pdist(coords).min() == 0.0:
        raise ValueError("points are not pairwise distinct")
    if ps.domain_tag == "sphere":
        norms = np.linalg.norm(pts, axis=1)
        if np.abs(norms - 1.0).max() > 1e-12:
            raise ValueError("sphere points must have unit norm")
    if ps.domain_tag == "annulus_region" and ps.annulus is not None:
        r_in, r_out = ps.annulus
        radii = np.linalg.norm(pts, axis=1)
        if radii.min() < r_in - 1e-12 or radii.max() > r_out + 1e-12:
            raise ValueError("annulus points violate the radial bounds")
    return ps


def minimal_separation(ps):
    """Smallest pairwise distance in the set's metric (exact O(M^2) scan)."""
    if len(ps) < 2:
        raise ValueError("minimal separation needs at least 2 points")
    pts = ps.points if ps.points.ndim == 2 else ps.points[:, None]
    d = pdist(pts)
    if ps.domain_tag == "sphere":
        # chordal -> geodesic: arccos of the dot product
        dots = 1.0 - 0.5 * d * d
        return float(np.arccos(np.clip(dots, -1.0, 1.0)).min())
    return float(d.min())


def mesh_norm_1d(xs):
    """Degree rule for interval nodes: ceil(2 pi / min arccos gap)."""
    xs = np.asarray(xs, dtype=np.float64).ravel()
    if xs.size < 2:
        raise ValueError("mesh norm needs at least 2 points")
    if np.any(np.abs(xs) > 1.0 + 1e-12):
        raise ValueError("interval points must lie in [-1, 1]")
    theta = np.sort(np.arccos(np.clip(xs, -1.0, 1.0)))
    gap = np.diff(theta).min()
    if gap == 0.0:
        raise ValueError("duplicate points give a zero arccos gap")
    return int(np.ceil(2.0 * np.pi / gap))


def _dedup_sorted(values, tol=1e-12):
    values = np.sort(np.asarray(values, dtype=np.float64))
    keep = np.empty(values.shape, dtype=bool)
    keep[0] = True
    keep[1:] = np.diff(values) > tol
    return values[keep]


def select_degree(ps):
    """Interpolation degree for a point set.

    Interval: the arccos mesh norm.  Square: the mesh norm per deduplicated
    coordinate, max over the two coordinates.  Annulus region: ceil(2 pi /
    eta) with eta the Euclidean minimal separation, which agrees with the
    per-coordinate rule on tensor grids but stays bounded on polar grids,
    where unrelated radii produce near-coincident coordinates and the
    per-coordinate rule degenerates.  Sphere: ceil(pi / eta), geodesic eta.
    """
    if ps.domain_tag == "interval":
        return mesh_norm_1d(ps.points)
    if ps.domain_tag == "sphere":
        eta = minimal_separation(ps)
        return int(np.ceil(np.pi / eta))
    if ps.domain_tag == "annulus_region":
        return int(np.ceil(2.0 * np.pi / minimal_separation(ps)))
    xs = _dedup_sorted(ps.points[:, 0])
    ys = _dedup_sorted(ps.points[:, 1])
    return max(mesh_norm_1d(xs), mesh_norm_1d(ys))


# ---------------------------------------------------------------------------
# Generators


def gen_equispaced_1d(n):
    """n equally spaced points covering [-1, 1] inclusive."""
    if n < 2:
        raise ValueError("need n >= 2")
    return PointSet("interval", np.linspace(-1.0, 1.0, n))


def gen_midpoints_1d(n):
    """The n-1 midpoints between consecutive equispaced points."""
    if n < 2:
        raise ValueError("need n >= 2")
    xs = np.linspace(-1.0, 1.0, n)
    return PointSet("interval", 0.5 * (xs[:-1] + xs[1:]))


def _cartesian(xs, ys):
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    return np.stack([gx.ravel(), gy.ravel()], axis=1)


def gen_tensor_grid(n):
    """n x n tensor product of the equispaced grid with itself."""
    xs = gen_equispaced_1d(n).points
    return PointSet("square", _cartesian(xs, xs))


def gen_tensor_midgrid(n):
    """(n-1) x (n-1) tensor product of the midpoint grid."""
    xs = gen_midpoints_1d(n).points
    return PointSet("square", _cartesian(xs, xs))


def gen_tensor_annulus(n, r_in=DEFAULT_R_IN, r_out=DEFAULT_R_OUT):
    """Tensor grid filtered to r_in <= |p| <= r_out (inclusive bounds)."""
    pts = gen_tensor_grid(n).points
    radii = np.linalg.norm(pts, axis=1)
    keep = (radii >= r_in) & (radii <= r_out)
    if not keep.any():
        raise ValueError("annulus filter left no points")
    return PointSet("annulus_region", pts[keep], annulus=(r_in, r_out))


def gen_annular_grid(m, n, r_in=DEFAULT_R_IN, r_out=DEFAULT_R_OUT):
    """Polar grid: m equispaced radii times n equispaced angles."""
    if m < 2:
        raise ValueError("need m >= 2 radial points")
    if n < 1:
        raise ValueError("need n >= 1 angular points")
    radii = np.linspace(r_in, r_out, m)
    angles = 2.0 * np.pi * np.arange(n) / n
    rr, aa = np.meshgrid(radii, angles, indexing="ij")
    pts = np.stack([(rr * np.cos(aa)).ravel(), (rr * np.sin(aa)).ravel()], axis=1)
    return PointSet("annulus_region", pts, annulus=(r_in, r_out))


def _fibonacci_sphere(count):
    i = np.arange(count, dtype=np.float64)
    z = 1.0 - (2.0 * i + 1.0) / count
    phi = 2.0 * np.pi * i * ((np.sqrt(5.0) - 1.0) / 2.0)
    st = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.stack([st * np.cos(phi), st * np.sin(phi), z], axis=1)


def _random_rotation(seed):
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def gen_sphere_scattered(d, cap_restriction=False, seed=0):
    """Greedy maximal packing with geodesic separation >= pi/d.

    Candidates come from a seeded rotation of a Fibonacci lattice with
    100 d^2 nodes, visited in sequence order; a candidate is accepted iff it
    keeps geodesic distance >= pi/d to everything accepted so far, which
    makes the result maximal over the candidate list.  With
    ``cap_restriction`` candidates are limited to polar angles in
    [0, pi/3] union [2 pi/3, pi].
    """
    if d < 2:
        raise ValueError("need d >= 2")
    eta = np.pi / d
    cand = _fibonacci_sphere(100 * d * d) @ _random_rotation(seed).T
    cand /= np.linalg.norm(cand, axis=1)[:, None]
    if cap_restriction:
        cand = cand[np.abs(cand[:, 2]) >= 0.5]

    # dot >= threshold  <=>  geodesic < eta; tiny margin keeps the invariant
    # strict after arccos rounding
    dot_max = np.cos(eta) - 1e-14
    chord = 2.0 * np.sin(eta / 2.0)
    inv_cell = 1.0 / chord
    accepted = np.empty_like(cand)
    n_acc = 0
    cells = {}
    offsets = [(i, j, k) for i in (-1, 0, 1) for j in (-1, 0, 1) for k in (-1, 0, 1)]
    for p in cand:
        ci = int((p[0] + 1.0) * inv_cell)
        cj = int((p[1] + 1.0) * inv_cell)
        ck = int((p[2] + 1.0) * inv_cell)
        ok = True
        for di, dj, dk in offsets:
            idxs = cells.get((ci + di, cj + dj, ck + dk))
            if idxs and np.max(accepted[idxs] @ p) > dot_max:
                ok = False
                break
        if ok:
            accepted[n_acc] = p
            cells.setdefault((ci, cj, ck), []).append(n_acc)
            n_acc += 1
    return PointSet("sphere", accepted[:n_acc].copy())


def write_points_csv(ps, path):
    """One point per row, one column per coordinate, 17 significant digits."""
    pts = ps.points if ps.points.ndim == 2 else ps.points[:, None]
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"x{i}" for i in range(pts.shape[1])])
        for row in pts:
            writer.writerow([f"{v:.17g}" for v in row])
