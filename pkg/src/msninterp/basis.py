"""Orthogonal basis families and their directional derivatives.

Three families are supported, each with a total deterministic ordering and a
nondecreasing eigenvalue sequence starting at 0 for the constant mode:

* ``chebyshev1d``  -- T_k on [-1, 1], ordered by degree, eigenvalue k.
* ``chebyshev2d``  -- tensor products T_k1(x) T_k2(y) on [-1, 1]^2, ordered by
  ascending Euclidean norm of (k1, k2) with lexicographic tie-break,
  eigenvalue ||(k1, k2)||_2.
* ``sphere``       -- real spherical harmonics on S^2, fully normalized with
  respect to the uniform probability measure, ordered by (l, m) with m
  running from -l to l, eigenvalue l.

Chebyshev values come from the three-term recurrence; spherical harmonics
from normalized associated-Legendre recurrences that avoid any division by
sin(theta), so evaluation and tangential gradients are well defined at the
poles.  All evaluation routines accept a ``dtype`` and run the recurrences in
that precision so single-precision experiments stay single end to end.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _validation
from .exceptions import DomainError

FAMILIES = ("chebyshev1d", "chebyshev2d", "sphere")

#: Ambient coordinate count per family.
POINT_DIM = {"chebyshev1d": 1, "chebyshev2d": 2, "sphere": 3}


@dataclass(frozen=True)
class BasisSpec:
    """Identifies a basis family and its per-coordinate degree bound.

    ``max_degree`` bounds the Chebyshev degree per coordinate, or the maximum
    spherical-harmonic degree L.
    """

    family: str
    max_degree: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if int(self.max_degree) != self.max_degree or self.max_degree < 0:
            raise ValueError("max_degree must be a nonnegative integer")
        object.__setattr__(self, "max_degree", int(self.max_degree))

    @property
    def dimension(self):
        return dimension(self)


@dataclass(frozen=True)
class BasisIndex:
    """One basis element: flat position, multi-index, and eigenvalue."""

    ordinal: int
    multi_index: tuple
    eigenvalue: float


def dimension(spec):
    """Number of basis elements: m+1, (m+1)^2, or (L+1)^2."""
    m = spec.max_degree
    if spec.family == "chebyshev1d":
        return m + 1
    return (m + 1) ** 2


@lru_cache(maxsize=None)
def multi_indices(spec):
    """Ordered tuple of multi-indices realizing the family's ordering."""
    m = spec.max_degree
    if spec.family == "chebyshev1d":
        return tuple((k,) for k in range(m + 1))
    if spec.family == "chebyshev2d":
        pairs = [(k1, k2) for k1 in range(m + 1) for k2 in range(m + 1)]
        pairs.sort(key=lambda k: (k[0] * k[0] + k[1] * k[1], k))
        return tuple(pairs)
    return tuple((l, mm) for l in range(m + 1) for mm in range(-l, l + 1))


@lru_cache(maxsize=None)
def eigenvalues(spec):
    """Eigenvalue lambda_k per ordinal, as a read-only float64 array."""
    idx = multi_indices(spec)
    if spec.family == "chebyshev1d":
        lam = np.array([k[0] for k in idx], dtype=np.float64)
    elif spec.family == "chebyshev2d":
        lam = np.array([np.hypot(k[0], k[1]) for k in idx], dtype=np.float64)
    else:
        lam = np.array([k[0] for k in idx], dtype=np.float64)
    lam.flags.writeable = False
    return lam


@lru_cache(maxsize=None)
def orthonormalization_factors(spec):
    """Factor w_k such that sqrt(w_k) * phi_k is orthonormal under mu*.

    Chebyshev T_k has squared norm 1/2 under the arcsine probability measure
    for k >= 1, so w_k = 2 there (and products thereof in 2D); spherical
    harmonics are already orthonormal.
    """
    idx = multi_indices(spec)
    if spec.family == "chebyshev1d":
        w = np.array([1.0 if k[0] == 0 else 2.0 for k in idx])
    elif spec.family == "chebyshev2d":
        w = np.array([2.0 ** ((k[0] > 0) + (k[1] > 0)) for k in idx])
    else:
        w = np.ones(len(idx))
    w.flags.writeable = False
    return w


def basis_index(spec, ordinal):
    """BasisIndex for a flat position; raises IndexError out of range."""
    n = dimension(spec)
    if not 0 <= ordinal < n:
        raise IndexError(f"ordinal {ordinal} out of range for dimension {n}")
    return BasisIndex(ordinal, multi_indices(spec)[ordinal], float(eigenvalues(spec)[ordinal]))


def sobolev_weight(spec, k, s):
    """Diagonal smoothness weight (1 + lambda_k)^s.

    Applied to (1 + lambda) rather than lambda so the constant mode keeps
    weight 1 and the diagonal stays positive definite.
    """
    if s < 0:
        raise ValueError("smoothness order s must be nonnegative")
    ordinal = k.ordinal if isinstance(k, BasisIndex) else int(k)
    lam = eigenvalues(spec)[ordinal]
    return float((1.0 + lam) ** s)


def sobolev_weights(spec, s, dtype=np.float64):
    """Vector of (1 + lambda_k)^s over all ordinals, in ``dtype``."""
    if s < 0:
        raise ValueError("smoothness order s must be nonnegative")
    ty = np.dtype(dtype).type
    lam = eigenvalues(spec).astype(dtype)
    return (ty(1) + lam) ** ty(s)


# ---------------------------------------------------------------------------
# Chebyshev recurrences


def chebyshev_t(x, max_degree, dtype=np.float64):
    """Matrix T[i, k] = T_k(x_i) via T_{k+1} = 2 x T_k - T_{k-1}."""
    x = np.asarray(x, dtype=dtype)
    out = np.empty((x.size, max_degree + 1), dtype=dtype)
    out[:, 0] = 1
    if max_degree >= 1:
        out[:, 1] = x
    two_x = 2 * x
    for k in range(2, max_degree + 1):
        out[:, k] = two_x * out[:, k - 1] - out[:, k - 2]
    return out


def chebyshev_t_deriv(x, max_degree, dtype=np.float64):
    """Matrix D[i, k] = T_k'(x_i), using T_k' = k U_{k-1}.

    The second-kind family U is generated by the same recurrence with U_1 = 2x.
    """
    x = np.asarray(x, dtype=dtype)
    out = np.empty((x.size, max_degree + 1), dtype=dtype)
    out[:, 0] = 0
    if max_degree >= 1:
        out[:, 1] = 1
    if max_degree >= 2:
        # u_prev = U_0, u_cur = U_1
        u_prev = np.ones_like(x)
        u_cur = 2 * x
        out[:, 2] = 2 * u_cur
        two_x = 2 * x
        for k in range(3, max_degree + 1):
            u_prev, u_cur = u_cur, two_x * u_cur - u_prev
            out[:, k] = k * u_cur
    return out


# ---------------------------------------------------------------------------
# Real spherical harmonics
#
# Q_lm denotes the associated Legendre function normalized to unit L2 norm on
# [-1, 1]; S_lm = Q_lm / sin(theta) for m >= 1 is generated directly so no
# recurrence ever divides by sin(theta).


def _sphere_angles(points, dtype):
    p = np.asarray(points, dtype=dtype)
    st = np.hypot(p[:, 0], p[:, 1])
    ct = p[:, 2]
    phi = np.arctan2(p[:, 1], p[:, 0])
    return st, ct, phi


def _lm_ordinal(l, m):
    return l * l + l + m


def sphere_values(points, max_degree, dtype=np.float64):
    """Matrix Y[i, k] of all real spherical harmonics at unit points."""
    L = max_degree
    st, ct, phi = _sphere_angles(points, dtype)
    n = st.size
    out = np.empty((n, (L + 1) ** 2), dtype=dtype)

    # m = 0 column chain
    q_prev = np.full(n, np.sqrt(0.5), dtype=dtype)
    sqrt2 = np.dtype(dtype).type(np.sqrt(2.0))
    out[:, 0] = sqrt2 * q_prev
    if L >= 1:
        q_cur = np.sqrt(np.dtype(dtype).type(3.0)) * ct * q_prev
        out[:, _lm_ordinal(1, 0)] = sqrt2 * q_cur
        for l in range(2, L + 1):
            a = np.sqrt((4.0 * l * l - 1.0) / (l * l))
            b = np.sqrt(((l - 1.0) ** 2) / (4.0 * (l - 1.0) ** 2 - 1.0))
            q_prev, q_cur = q_cur, np.dtype(dtype).type(a) * (ct * q_cur - np.dtype(dtype).type(b) * q_prev)
            out[:, _lm_ordinal(l, 0)] = sqrt2 * q_cur

    # m >= 1 chains carry Q_mm = sqrt((2m+1)/(2m)) sin(theta) Q_{m-1,m-1}
    qmm = np.full(n, np.sqrt(0.5), dtype=dtype)
    for m in range(1, L + 1):
        qmm = np.dtype(dtype).type(np.sqrt((2.0 * m + 1.0) / (2.0 * m))) * st * qmm
        cos_m = np.cos(m * phi).astype(dtype, copy=False)
        sin_m = np.sin(m * phi).astype(dtype, copy=False)
        q_prev = qmm
        out[:, _lm_ordinal(m, m)] = 2 * q_prev * cos_m
        out[:, _lm_ordinal(m, -m)] = 2 * q_prev * sin_m
        if m + 1 <= L:
            q_cur = np.dtype(dtype).type(np.sqrt(2.0 * m + 3.0)) * ct * q_prev
            out[:, _lm_ordinal(m + 1, m)] = 2 * q_cur * cos_m
            out[:, _lm_ordinal(m + 1, -m)] = 2 * q_cur * sin_m
            for l in range(m + 2, L + 1):
                a = np.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
                b = np.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
                q_prev, q_cur = q_cur, np.dtype(dtype).type(a) * (ct * q_cur - np.dtype(dtype).type(b) * q_prev)
                out[:, _lm_ordinal(l, m)] = 2 * q_cur * cos_m
                out[:, _lm_ordinal(l, -m)] = 2 * q_cur * sin_m
    return out


def sphere_angular_derivs(points, max_degree, dtype=np.float64):
    """Angular derivative tables (d/dtheta, (1/sin theta) d/dphi) of all Y.

    Returns a pair of (n, (L+1)^2) matrices.  Combined with the orthonormal
    frame from :func:`tangent_frame`, the tangential gradient of Y_k at point
    i is ``d_theta[i, k] * e_theta[i] + d_phi_scaled[i, k] * e_phi[i]``.  The
    construction never divides by sin(theta); both tables have finite limits
    at the poles.
    """
    L = max_degree
    st, ct, phi = _sphere_angles(points, dtype)
    n = st.size
    dim = (L + 1) ** 2
    d_theta = np.zeros((n, dim), dtype=dtype)
    d_phi_scaled = np.zeros((n, dim), dtype=dtype)
    if L == 0:
        return d_theta, d_phi_scaled

    ty = np.dtype(dtype).type
    sqrt2 = ty(np.sqrt(2.0))

    # S_lm = Q_lm / sin(theta) for every m >= 1; S_l1 also feeds the m = 0
    # theta-derivative through d/dtheta Q_l0 = -sqrt(l(l+1)) sin(theta) S_l1.
    smm = np.full(n, np.sqrt(3.0) / 2.0, dtype=dtype)  # S_11
    for m in range(1, L + 1):
        if m > 1:
            smm = ty(np.sqrt((2.0 * m + 1.0) / (2.0 * m))) * st * smm
        cos_m = np.cos(m * phi).astype(dtype, copy=False)
        sin_m = np.sin(m * phi).astype(dtype, copy=False)
        s_prev = smm  # S_mm
        s_list_needed = m == 1
        if s_list_needed:
            s1 = np.empty((L + 1, n), dtype=dtype)
            s1[1] = s_prev
        # l = m row: d/dtheta Q_mm = m ct S_mm
        dth = ty(m) * ct * s_prev
        d_theta[:, _lm_ordinal(m, m)] = 2 * dth * cos_m
        d_theta[:, _lm_ordinal(m, -m)] = 2 * dth * sin_m
        d_phi_scaled[:, _lm_ordinal(m, m)] = 2 * s_prev * (-ty(m) * sin_m)
        d_phi_scaled[:, _lm_ordinal(m, -m)] = 2 * s_prev * (ty(m) * cos_m)
        if m + 1 <= L:
            s_cur = ty(np.sqrt(2.0 * m + 3.0)) * ct * s_prev
            if s_list_needed:
                s1[m + 1] = s_cur
            for l in range(m + 1, L + 1):
                if l > m + 1:
                    a = np.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
                    b = np.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
                    s_prev, s_cur = s_cur, ty(a) * (ct * s_cur - ty(b) * s_prev)
                    if s_list_needed:
                        s1[l] = s_cur
                beta = ty(np.sqrt((2.0 * l + 1.0) * (l * l - m * m) / (2.0 * l - 1.0)))
                # after the swap, s_prev holds S_{l-1,m} and s_cur holds S_{l,m}
                dth = ty(l) * ct * s_cur - beta * s_prev
                d_theta[:, _lm_ordinal(l, m)] = 2 * dth * cos_m
                d_theta[:, _lm_ordinal(l, -m)] = 2 * dth * sin_m
                d_phi_scaled[:, _lm_ordinal(l, m)] = 2 * s_cur * (-ty(m) * sin_m)
                d_phi_scaled[:, _lm_ordinal(l, -m)] = 2 * s_cur * (ty(m) * cos_m)

    # m = 0: d/dtheta Y_l0 = -sqrt(2 l (l+1)) sin(theta) S_l1
    for l in range(1, L + 1):
        d_theta[:, _lm_ordinal(l, 0)] = -sqrt2 * ty(np.sqrt(l * (l + 1.0))) * st * s1[l]
    return d_theta, d_phi_scaled


def _coordinate_frame(points, dtype=np.float64):
    """(e_theta, e_phi) from spherical coordinates, with phi = 0 at the poles.

    Orthonormal and tangent everywhere; this is the frame the angular
    derivative tables of :func:`sphere_angular_derivs` are expressed in.
    """
    p = np.asarray(points, dtype=dtype)
    st = np.hypot(p[:, 0], p[:, 1])
    ct = p[:, 2]
    phi = np.arctan2(p[:, 1], p[:, 0])
    e_theta = np.stack([ct * np.cos(phi), ct * np.sin(phi), -st], axis=1)
    e_phi = np.stack([-np.sin(phi), np.cos(phi), np.zeros_like(phi)], axis=1)
    return e_theta, e_phi


def tangent_frame(points, dtype=np.float64, pole_tol=1e-8):
    """Orthonormal tangent frame (e_theta, e_phi) at each unit point.

    Within ``pole_tol`` of the poles the coordinate frame is replaced by a
    smooth completion built from the x-axis, since (theta, phi) coordinates
    degenerate there.
    """
    p = np.asarray(points, dtype=dtype)
    st = np.hypot(p[:, 0], p[:, 1])
    e_theta, e_phi = _coordinate_frame(points, dtype)
    near_pole = st < pole_tol
    if np.any(near_pole):
        q = p[near_pole]
        ex = np.zeros_like(q)
        ex[:, 0] = 1
        v1 = ex - (q[:, :1] * q)
        v1 /= np.linalg.norm(v1, axis=1, keepdims=True)
        v2 = np.cross(q, v1)
        e_theta[near_pole] = v1
        e_phi[near_pole] = v2
    return e_theta, e_phi


# ---------------------------------------------------------------------------
# Assembly-facing evaluation


def _check_points(spec, points):
    if spec.family == "chebyshev1d":
        return _validation.check_interval(points)
    if spec.family == "chebyshev2d":
        return _validation.check_square(points)
    return _validation.check_sphere(points)


def value_matrix(spec, points, dtype=np.float64):
    """All basis values at all points: shape (n_points, dimension)."""
    pts = _check_points(spec, points)
    m = spec.max_degree
    if spec.family == "chebyshev1d":
        return chebyshev_t(pts, m, dtype)
    if spec.family == "chebyshev2d":
        tx = chebyshev_t(pts[:, 0], m, dtype)
        ty_ = chebyshev_t(pts[:, 1], m, dtype)
        k = np.array(multi_indices(spec))
        return tx[:, k[:, 0]] * ty_[:, k[:, 1]]
    return sphere_values(pts, m, dtype)


def deriv_matrix(spec, points, directions, dtype=np.float64):
    """Directional-derivative rows: D[i, k] = (d phi_k / d v_i)(p_i)."""
    pts = _check_points(spec, points)
    m = spec.max_degree
    if spec.family == "chebyshev1d":
        d = _validation.check_unit(directions, 1).astype(dtype)
        return d[:, None] * chebyshev_t_deriv(pts, m, dtype)
    if spec.family == "chebyshev2d":
        d = _validation.check_unit(directions, 2).astype(dtype)
        tx = chebyshev_t(pts[:, 0], m, dtype)
        ty_ = chebyshev_t(pts[:, 1], m, dtype)
        dtx = chebyshev_t_deriv(pts[:, 0], m, dtype)
        dty = chebyshev_t_deriv(pts[:, 1], m, dtype)
        k = np.array(multi_indices(spec))
        k1, k2 = k[:, 0], k[:, 1]
        return d[:, :1] * dtx[:, k1] * ty_[:, k2] + d[:, 1:] * tx[:, k1] * dty[:, k2]
    d = _validation.check_unit(directions, 3)
    _validation.check_tangent(pts, d)
    d = d.astype(dtype)
    d_theta, d_phi_scaled = sphere_angular_derivs(pts, m, dtype)
    e_theta, e_phi = _coordinate_frame(pts, dtype)
    c1 = np.sum(d * e_theta, axis=1, keepdims=True)
    c2 = np.sum(d * e_phi, axis=1, keepdims=True)
    return c1 * d_theta + c2 * d_phi_scaled


def eval_basis(spec, k, point):
    """Value of one basis element phi_k at one point."""
    ordinal = k.ordinal if isinstance(k, BasisIndex) else int(k)
    if not 0 <= ordinal < dimension(spec):
        raise IndexError(f"ordinal {ordinal} out of range")
    pts = np.asarray(point, dtype=np.float64).reshape(1, -1) if spec.family != "chebyshev1d" else np.atleast_1d(point)
    return float(value_matrix(spec, pts)[0, ordinal])


def eval_basis_deriv(spec, k, point, direction):
    """Directional derivative of phi_k at one point along a unit direction."""
    ordinal = k.ordinal if isinstance(k, BasisIndex) else int(k)
    if not 0 <= ordinal < dimension(spec):
        raise IndexError(f"ordinal {ordinal} out of range")
    if spec.family == "chebyshev1d":
        pts = np.atleast_1d(point)
        dirs = np.atleast_1d(direction)
    else:
        pts = np.asarray(point, dtype=np.float64).reshape(1, -1)
        dirs = np.asarray(direction, dtype=np.float64).reshape(1, -1)
    return float(deriv_matrix(spec, pts, dirs)[0, ordinal])
