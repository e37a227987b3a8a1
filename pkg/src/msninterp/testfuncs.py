"""Benchmark target functions and their exact gradients.

The planar family stacks four Runge-type bumps whose ridges sit on two
parabolas, a line, and a circle; larger sharpness R makes the interpolation
harder.  The 1D target is the planar function frozen at y = -0.96, and the
sphere target is a Runge-type composition of coordinate cosines.
"""

import numpy as np


def _bump(r, t):
    return 1.0 / (1.0 + r * t * t)


def _dbump(r, t):
    denom = 1.0 + r * t * t
    return -2.0 * r * t / (denom * denom)


def eval_runge2d(r, x, y):
    """Four-bump Runge-type function on the plane."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    return (_bump(r, x * x + y - 0.3)
            + _bump(r, x + y - 0.4)
            + _bump(r, x + y * y - 0.5)
            + _bump(r, x * x + y * y - 0.25))


def grad_runge2d(r, x, y):
    """Exact gradient of :func:`eval_runge2d`, stacked on the last axis."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    d1 = _dbump(r, x * x + y - 0.3)
    d2 = _dbump(r, x + y - 0.4)
    d3 = _dbump(r, x + y * y - 0.5)
    d4 = _dbump(r, x * x + y * y - 0.25)
    gx = d1 * 2 * x + d2 + d3 + d4 * 2 * x
    gy = d1 + d2 + d3 * 2 * y + d4 * 2 * y
    return np.stack([gx, gy], axis=-1)


FIXED_Y_1D = -0.96


def eval_runge1d(x):
    """1D slice of the sharp planar target along y = -0.96."""
    return eval_runge2d(25.0, x, FIXED_Y_1D)


def d_runge1d(x):
    """Exact derivative of :func:`eval_runge1d`."""
    return grad_runge2d(25.0, x, FIXED_Y_1D)[..., 0]


def eval_sphere_runge(p):
    """Runge-type composition of coordinate cosines, restricted to S^2."""
    p = np.asarray(p, dtype=np.float64)
    u = np.cos(7 * p[..., 0]) + np.cos(7 * p[..., 1]) + np.cos(7 * p[..., 2])
    return 1.0 / (1.0 + u * u)


def tangential_grad_sphere_runge(p):
    """Tangential gradient (I - p p^T) grad g at unit points p."""
    p = np.asarray(p, dtype=np.float64)
    u = (np.cos(7 * p[..., 0]) + np.cos(7 * p[..., 1]) + np.cos(7 * p[..., 2]))[..., None]
    denom = (1.0 + u * u) ** 2
    ambient = 14.0 * u * np.sin(7 * p) / denom
    radial = np.sum(ambient * p, axis=-1, keepdims=True)
    return ambient - radial * p


class Runge2D:
    """Planar target with sharpness parameter R, as a field object."""

    def __init__(self, r=25.0):
        self.r = float(r)

    def value(self, points):
        pts = np.atleast_2d(points)
        return eval_runge2d(self.r, pts[:, 0], pts[:, 1])

    def gradient(self, points):
        pts = np.atleast_2d(points)
        return grad_runge2d(self.r, pts[:, 0], pts[:, 1])


class Runge1D:
    """The fixed 1D slice as a field object."""

    def value(self, points):
        return eval_runge1d(np.atleast_1d(points))

    def gradient(self, points):
        return d_runge1d(np.atleast_1d(points))


class SphereRunge:
    """The sphere target as a field object."""

    def value(self, points):
        return eval_sphere_runge(np.atleast_2d(points))

    def gradient(self, points):
        return tangential_grad_sphere_runge(np.atleast_2d(points))
