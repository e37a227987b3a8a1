"""Minimum-weighted-norm solver for interpolation constraint systems.

Solves min ||D_s a||_2 subject to V a = f by substituting c = D_s a, which
turns the problem into the minimum-norm solution of B c = f with
B = V D_s^{-1}.  The ill-conditioning of the problem lives entirely in the
diagonal D_s, so B is formed by column scaling before any factorization and
normal equations are never used.  B is then factored by column-pivoted QR,
truncated at the numerical rank, and completed to a full orthogonal
decomposition whose back-substitution yields the minimum-norm solution.
"""

import csv
import os
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import basis as _basis
from .exceptions import InfeasibleSystemError, OracleInapplicableError

#: Relative rank tolerances: working epsilon times a safety factor.
RANK_TOLERANCES = {"double": 1e-13, "single": 1e-6}

_DTYPES = {"double": np.float64, "single": np.float32}


@dataclass
class MsnSolution:
    """Coefficients plus factorization diagnostics.

    ``constraint_residual`` is ||V a - f||_inf / max(1, ||f||_inf) computed
    in the working precision; it is always reported, never assumed zero.
    """

    coefficients: np.ndarray
    constraint_residual: float
    numerical_rank: int
    rank_tolerance_used: float
    precision: str


def _precision_of(dtype):
    return "single" if np.dtype(dtype) == np.float32 else "double"


def _prepare(system, s, precision):
    if system.n_rows == 0:
        raise ValueError("constraint system is empty")
    if s < 0:
        raise ValueError("smoothness order s must be nonnegative")
    if precision is None:
        precision = _precision_of(system.matrix.dtype)
    if precision not in _DTYPES:
        raise ValueError(f"unknown precision {precision!r}")
    dtype = _DTYPES[precision]
    V = np.asarray(system.matrix, dtype=dtype)
    f = np.asarray(system.rhs, dtype=dtype)
    w = _basis.sobolev_weights(system.spec, s, dtype)
    return V, f, w, precision, dtype


def _residual(V, a, f):
    r = V @ a - f
    scale = max(1.0, float(np.abs(f).max())) if f.size else 1.0
    return float(np.abs(r).max()) / scale


def _cod_backsolve(Q, R, piv, f, w, rank, dtype):
    """Minimum-norm coefficients from the leading ``rank`` rows of R."""
    n = R.shape[1]
    Q2, R2 = scipy.linalg.qr(R[:rank].T.copy(), mode="economic")
    g = Q[:, :rank].T @ f
    u = scipy.linalg.solve_triangular(R2.T, g, lower=True)
    c = np.empty(n, dtype=dtype)
    c[piv] = Q2 @ u
    return c / w


def solve_msn(system, s, precision=None):
    """Minimum ||D_s a||_2 solution of V a = f.

    Column-pivoted QR of B orders the columns by their weighted size, so the
    triangular factor is graded and back-substitution recovers every
    coefficient scale accurately; the full working rank is therefore kept by
    default even though the diagonal of R decays through the weight range.
    When the diagonal additionally signals genuine degeneracy (dependent
    functionals), the rank-truncated solve is computed as well and the
    candidate with the smaller constraint residual wins, so degenerate
    systems degrade to a least-squares-consistent minimum-norm solution
    instead of failing.
    """
    V, f, w, precision, dtype = _prepare(system, s, precision)
    B = V * (1.0 / w)
    Q, R, piv = scipy.linalg.qr(B, mode="economic", pivoting=True)
    del B
    diag = np.abs(np.diag(R))
    rank_tol = RANK_TOLERANCES[precision]
    lead = diag[0] if diag.size else 0.0
    if lead == 0.0:
        n = V.shape[1]
        a = np.zeros(n, dtype=dtype)
        resid = _residual(V, a, f)
        if np.abs(f).max() > 0:
            raise InfeasibleSystemError(
                "system has numerical rank 0 but nonzero data", resid)
        return MsnSolution(a, resid, 0, rank_tol, precision)

    full_rank = int(np.nonzero(diag > 0)[0][-1]) + 1
    above = np.nonzero(diag >= rank_tol * lead)[0]
    tol_rank = int(above[-1]) + 1 if above.size else 0

    best = None
    for rank in dict.fromkeys((full_rank, tol_rank)):
        if rank <= 0:
            continue
        a = _cod_backsolve(Q, R, piv, f, w, rank, dtype)
        if not np.all(np.isfinite(a)):
            continue
        resid = _residual(V, a, f)
        if best is None or resid < best[1]:
            best = (a, resid, rank)
    if best is None:
        raise InfeasibleSystemError("back-substitution produced no finite solution",
                                    _residual(V, np.zeros(V.shape[1], dtype=dtype), f))
    a, resid, rank = best
    return MsnSolution(a, resid, rank, rank_tol, precision)


def nullspace_basis(system, s, precision=None):
    """Orthonormal basis (in the scaled variable) of the rank-truncated
    nullspace, mapped back to coefficient space: columns z satisfy V z ~ 0."""
    V, f, w, precision, dtype = _prepare(system, s, precision)
    B = V * (1.0 / w)
    Q, R, piv = scipy.linalg.qr(B, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    rank = int(np.nonzero(diag > 0)[0][-1]) + 1 if diag.size and diag[0] > 0 else 0
    qfull, _ = scipy.linalg.qr(R[:rank].T.copy(), mode="full")
    null_d = qfull[:, rank:]
    z = np.empty_like(null_d)
    z[piv] = null_d
    return z / w[:, None]


def oracle_solve_msn(system, s):
    """Reference minimum-norm solution by row orthonormalization.

    Modified Gram-Schmidt with a full second pass orthonormalizes the rows
    of B = V D_s^{-1}; expressing f in that row basis and mapping back gives
    the minimum-norm solution with no pivoting or truncation.  Small dense
    systems only; numerically dependent rows are rejected.
    """
    if system.n_rows > 200:
        raise ValueError("oracle is restricted to systems with <= 200 rows")
    V, f, w, precision, dtype = _prepare(system, s, "double")
    B = V * (1.0 / w)
    m, n = B.shape
    q = np.empty((m, n))
    r = np.zeros((m, m))
    for i in range(m):
        v = B[i].copy()
        norm0 = np.linalg.norm(v)
        for _ in range(2):  # full reorthogonalization
            for j in range(i):
                proj = q[j] @ v
                r[j, i] += proj
                v -= proj * q[j]
        norm = np.linalg.norm(v)
        if norm <= 1e-12 * max(norm0, 1.0):
            raise OracleInapplicableError("rows of B are numerically dependent")
        r[i, i] = norm
        q[i] = v / norm
    y = scipy.linalg.solve_triangular(r.T, f, lower=True)
    c = q.T @ y
    a = c / w
    return MsnSolution(a, _residual(V, a, f), m, 0.0, "double")


# ---------------------------------------------------------------------------
# Interpolant evaluation


def _clenshaw(coeffs, x, dtype):
    x = np.asarray(x, dtype=dtype)
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    two_x = 2 * x
    for k in range(len(coeffs) - 1, 0, -1):
        b1, b2 = coeffs[k] + two_x * b1 - b2, b1
    return coeffs[0] + x * b1 - b2


def evaluate_interpolant(spec, coefficients, points, dtype=np.float64):
    """Sum_k a_k phi_k at the given points.

    Chebyshev series on the interval go through the Clenshaw recurrence;
    the other families use direct summation against the basis matrix.
    """
    coefficients = np.asarray(coefficients, dtype=dtype)
    if coefficients.shape[0] != _basis.dimension(spec):
        raise ValueError("coefficient length must equal the basis dimension")
    if spec.family == "chebyshev1d":
        scalar = np.ndim(points) == 0
        out = _clenshaw(coefficients, np.atleast_1d(points), dtype)
        return float(out[0]) if scalar else out
    pts = np.asarray(points, dtype=np.float64)
    scalar = pts.ndim == 1
    pts = np.atleast_2d(pts)
    out = np.empty(pts.shape[0], dtype=dtype)
    step = max(1, int(2**22 // max(coefficients.size, 1)))
    for lo in range(0, pts.shape[0], step):
        chunk = pts[lo:lo + step]
        out[lo:lo + step] = _basis.value_matrix(spec, chunk, dtype) @ coefficients
    return float(out[0]) if scalar else out


def evaluate_interpolant_deriv(spec, coefficients, points, directions, dtype=np.float64):
    """Directional derivative of the interpolant at the given points."""
    coefficients = np.asarray(coefficients, dtype=dtype)
    if coefficients.shape[0] != _basis.dimension(spec):
        raise ValueError("coefficient length must equal the basis dimension")
    if spec.family == "chebyshev1d":
        pts = np.atleast_1d(points)
        dirs = np.atleast_1d(directions)
    else:
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        dirs = np.atleast_2d(np.asarray(directions, dtype=np.float64))
    scalar = np.ndim(points) == (0 if spec.family == "chebyshev1d" else 1)
    out = _basis.deriv_matrix(spec, pts, dirs, dtype) @ coefficients
    return float(out[0]) if scalar else out


def evaluate_on_tensor_grid(spec, coefficients, xs, ys, dtype=np.float64):
    """Interpolant values on a tensor grid xs x ys, exploiting separability.

    Returns a (len(xs), len(ys)) array; only valid for the 2D family.
    """
    if spec.family != "chebyshev2d":
        raise ValueError("tensor-grid evaluation requires the 2D family")
    coefficients = np.asarray(coefficients, dtype=dtype)
    m = spec.max_degree
    C = np.zeros((m + 1, m + 1), dtype=dtype)
    idx = np.array(_basis.multi_indices(spec))
    C[idx[:, 0], idx[:, 1]] = coefficients
    tx = _basis.chebyshev_t(np.asarray(xs), m, dtype)
    ty = _basis.chebyshev_t(np.asarray(ys), m, dtype)
    return tx @ C @ ty.T


def dump_system_csv(system, s, solution, directory):
    """Write V, the weight diagonal, f, and a as CSV files for offline study."""
    os.makedirs(directory, exist_ok=True)
    w = _basis.sobolev_weights(system.spec, s)
    named = {
        "matrix.csv": np.atleast_2d(system.matrix),
        "weights.csv": w[None, :],
        "rhs.csv": np.atleast_2d(system.rhs),
        "coefficients.csv": np.atleast_2d(solution.coefficients),
    }
    for name, arr in named.items():
        with open(os.path.join(directory, name), "w", newline="\n") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            for row in arr:
                writer.writerow([f"{v:.17g}" for v in row])
