"""Reproducing-kernel route to the same interpolation problem.

The minimum-norm interpolant can also be written as a combination of
derivative-applied kernel sections L_{k,1}G(y_j, .), where G is the
spectrally defined kernel sum_j (1+lambda_j)^(-2 beta) phi_j(x) phi_j(y)
over the orthonormalized basis.  Solving the symmetric positive-definite
Gram system gives an interpolant used as an independent cross-check of the
direct solver; the series is truncated at eigenvalue cutoff K, which is the
route's only approximation.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import basis as _basis
from . import constraints as _constraints
from . import solver as _solver
from .exceptions import GramConditioningError

#: Ambient dimension q per family, bounding admissible beta > q/2.
_FAMILY_Q = {"chebyshev1d": 1, "chebyshev2d": 2, "sphere": 2}


@dataclass(frozen=True)
class KernelSpec:
    """Kernel smoothness beta, series cutoff K, and basis context."""

    beta: float
    truncation: int
    spec: _basis.BasisSpec

    def __post_init__(self):
        q = _FAMILY_Q[self.spec.family]
        if not self.beta > q / 2.0:
            raise ValueError(f"beta must exceed q/2 = {q / 2}")
        if self.truncation < 1:
            raise ValueError("truncation cutoff must be >= 1")

    @property
    def active(self):
        """Boolean mask of basis ordinals with eigenvalue below the cutoff."""
        return _basis.eigenvalues(self.spec) < self.truncation


def kernel_spec(family, beta, truncation):
    """KernelSpec whose basis covers every eigenvalue below the cutoff."""
    max_degree = int(np.ceil(truncation)) - 1
    return KernelSpec(float(beta), int(truncation), _basis.BasisSpec(family, max_degree))


def default_truncation(degree):
    """Series cutoff K = max(64, 4 * degree): the (1+lambda)^(-2 beta) tail
    beyond it is negligible for beta >= 2."""
    return max(64, 4 * int(degree))


def _mask_weights(ks):
    lam = _basis.eigenvalues(ks.spec)
    w = _basis.orthonormalization_factors(ks.spec)
    mask = ks.active
    return mask, w * (1.0 + lam) ** (-2.0 * ks.beta)


def eval_G(ks, x, y):
    """Kernel value G(x, y) by direct truncated summation."""
    mask, b2w = _mask_weights(ks)
    vx = _row(ks.spec, x)
    vy = _row(ks.spec, y)
    return float(np.sum(b2w[mask] * vx[mask] * vy[mask]))


def eval_LkG(ks, functional, x):
    """Functional applied to the first kernel slot, evaluated at x."""
    mask, b2w = _mask_weights(ks)
    row = _functional_row(ks.spec, functional)
    vx = _row(ks.spec, x)
    return float(np.sum(b2w[mask] * row[mask] * vx[mask]))


def _row(spec, point):
    pts = np.atleast_1d(point) if spec.family == "chebyshev1d" else np.asarray(point, dtype=np.float64).reshape(1, -1)
    return _basis.value_matrix(spec, pts)[0]


def _functional_row(spec, fl):
    if fl.kind == _constraints.EVAL:
        return _row(spec, fl.point if spec.family != "chebyshev1d" else fl.point[0])
    if spec.family == "chebyshev1d":
        return _basis.deriv_matrix(spec, np.atleast_1d(fl.point[0]),
                                   np.atleast_1d(fl.direction[0]))[0]
    return _basis.deriv_matrix(spec, np.asarray(fl.point)[None, :],
                               np.asarray(fl.direction)[None, :])[0]


@dataclass
class KernelSolution:
    """Section coefficients a, equivalent basis coefficients, and jitter."""

    section_coefficients: np.ndarray
    basis_coefficients: np.ndarray
    jitter: float
    spec: _basis.BasisSpec

    def predict(self, points):
        return _solver.evaluate_interpolant(self.spec, self.basis_coefficients, points)


def gram_matrix(ks, functionals):
    """Gram matrix G[i, j] = (L_i x L_j) applied to the kernel."""
    functionals = list(functionals)
    mask, b2w = _mask_weights(ks)
    V = _constraints.assemble(ks.spec, functionals, np.zeros(len(functionals))).matrix
    scaled = V[:, mask] * np.sqrt(b2w[mask])
    G = scaled @ scaled.T
    return 0.5 * (G + G.T)


def solve_kernel_system(ks, functionals, data):
    """Interpolant through the kernel Gram system.

    A diagonal Tikhonov jitter of at most 1e-12 trace/n compensates for the
    slight definiteness loss the truncation introduces; if the factorization
    still fails, a conditioning error with the smallest-eigenvalue estimate
    is raised.  The returned solution carries plain basis coefficients
    c_k = (1+lambda_k)^(-2 beta) w_k (V^T a)_k, so the interpolant can be
    evaluated like any other.
    """
    functionals = list(functionals)
    data = np.asarray(data, dtype=np.float64)
    if len(functionals) != data.shape[0]:
        raise ValueError("functional and data counts differ")
    mask, b2w = _mask_weights(ks)
    V = _constraints.assemble(ks.spec, functionals, data).matrix
    Vm = V[:, mask]
    scaled = Vm * np.sqrt(b2w[mask])
    G = scaled @ scaled.T
    G = 0.5 * (G + G.T)
    jitter = 1e-12 * np.trace(G) / G.shape[0]
    try:
        cho = scipy.linalg.cho_factor(G + jitter * np.eye(G.shape[0]), lower=True)
    except scipy.linalg.LinAlgError as exc:
        smallest = float(scipy.linalg.eigvalsh(G, subset_by_index=(0, 0))[0])
        raise GramConditioningError(
            f"Gram matrix not positive definite after jitter (lambda_min ~ {smallest:.3e})",
            smallest) from exc
    a = scipy.linalg.cho_solve(cho, data)
    coeffs = np.zeros(V.shape[1])
    coeffs[mask] = b2w[mask] * (Vm.T @ a)
    return KernelSolution(a, coeffs, jitter, ks.spec)
