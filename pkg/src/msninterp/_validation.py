"""Shared input-validation helpers for points and directions."""

import numpy as np

from .exceptions import DomainError

SPHERE_NORM_TOL = 1e-12
TANGENT_TOL = 1e-12
UNIT_TOL = 1e-10
BOX_TOL = 1e-12


def as_point_array(points, ndim):
    """Coerce ``points`` to a float64 array of shape (n, ndim) (or (n,) for 1D)."""
    pts = np.asarray(points, dtype=np.float64)
    if ndim == 1:
        pts = np.atleast_1d(pts)
        if pts.ndim != 1:
            raise ValueError(f"expected 1D points, got shape {pts.shape}")
        return pts
    pts = np.atleast_2d(pts)
    if pts.ndim != 2 or pts.shape[1] != ndim:
        raise ValueError(f"expected points of shape (n, {ndim}), got {pts.shape}")
    return pts


def check_interval(x):
    x = as_point_array(x, 1)
    if np.any(np.abs(x) > 1.0 + BOX_TOL):
        raise DomainError("point outside [-1, 1]")
    return x


def check_square(p):
    p = as_point_array(p, 2)
    if np.any(np.abs(p) > 1.0 + BOX_TOL):
        raise DomainError("point outside [-1, 1]^2")
    return p


def check_sphere(p):
    p = as_point_array(p, 3)
    norms = np.linalg.norm(p, axis=-1)
    if np.any(np.abs(norms - 1.0) > SPHERE_NORM_TOL):
        raise DomainError("point not on the unit sphere")
    return p


def check_unit(direction, ndim):
    """Validate a single direction (or stacked directions) of unit length."""
    d = as_point_array(direction, ndim)
    norms = np.abs(d) if ndim == 1 else np.linalg.norm(d, axis=-1)
    if np.any(np.abs(norms - 1.0) > UNIT_TOL):
        raise ValueError("direction must have unit Euclidean norm")
    return d


def check_tangent(points, directions):
    """Sphere directions must be orthogonal to their base points."""
    dots = np.sum(np.asarray(points) * np.asarray(directions), axis=-1)
    if np.any(np.abs(dots) > TANGENT_TOL):
        raise ValueError("sphere direction is not tangent at its base point")
