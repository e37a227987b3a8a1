"""Birkhoff data and the dense constraint system V a = f.

A list of linear functionals (point evaluations and directional derivatives)
applied to a basis family yields the generalized Vandermonde matrix V; rows
follow the input functional order exactly.  No squareness is required or
checked: the basis dimension routinely exceeds the number of conditions.
"""

from dataclasses import dataclass

import numpy as np

from . import basis as _basis
from . import _validation

EVAL = "eval"
DERIV = "deriv"


@dataclass(frozen=True)
class LinearFunctional:
    """Point evaluation or directional derivative at a point.

    ``point`` and ``direction`` are stored as tuples (scalars for the
    interval) so functionals stay hashable and immutable.
    """

    kind: str
    point: tuple
    direction: tuple = None

    @staticmethod
    def value(point):
        return LinearFunctional(EVAL, _as_tuple(point))

    @staticmethod
    def derivative(point, direction):
        return LinearFunctional(DERIV, _as_tuple(point), _as_tuple(direction))


def _as_tuple(x):
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0:
        return (float(arr),)
    return tuple(float(v) for v in arr)


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    """Dense matrix V (functionals x basis ordinals) and right-hand side f."""

    matrix: np.ndarray
    rhs: np.ndarray
    spec: _basis.BasisSpec

    def __post_init__(self):
        if self.matrix.shape[0] != self.rhs.shape[0]:
            raise ValueError("row count of V must match length of f")
        if self.matrix.shape[1] != _basis.dimension(self.spec):
            raise ValueError("column count of V must match basis dimension")
        if not np.all(np.isfinite(self.matrix)) or not np.all(np.isfinite(self.rhs)):
            raise ValueError("constraint system contains non-finite entries")

    @property
    def n_rows(self):
        return self.matrix.shape[0]


def assemble(spec, functionals, data, dtype=np.float64):
    """Build V[i, k] = (functional_i phi_k) and f from Birkhoff data.

    Rows are filled in input order.  Basis recurrences run in ``dtype`` so a
    single-precision system is single end to end.
    """
    functionals = list(functionals)
    data = np.asarray(data, dtype=dtype)
    if len(functionals) != data.shape[0]:
        raise ValueError("functional and data counts differ")
    ndim = _basis.POINT_DIM[spec.family]
    eval_rows = [i for i, fl in enumerate(functionals) if fl.kind == EVAL]
    deriv_rows = [i for i, fl in enumerate(functionals) if fl.kind == DERIV]
    if len(eval_rows) + len(deriv_rows) != len(functionals):
        raise ValueError("unknown functional kind")

    V = np.empty((len(functionals), _basis.dimension(spec)), dtype=dtype)
    if eval_rows:
        pts = _stack_points([functionals[i].point for i in eval_rows], ndim)
        V[eval_rows] = _basis.value_matrix(spec, pts, dtype)
    if deriv_rows:
        pts = _stack_points([functionals[i].point for i in deriv_rows], ndim)
        dirs = _stack_points([functionals[i].direction for i in deriv_rows], ndim)
        V[deriv_rows] = _basis.deriv_matrix(spec, pts, dirs, dtype)
    return ConstraintSystem(V, data, spec)


def _stack_points(tuples, ndim):
    arr = np.asarray(tuples, dtype=np.float64)
    return arr[:, 0] if ndim == 1 else arr


def default_directions(domain_tag):
    """Derivative directions used when none are supplied."""
    if domain_tag == "interval":
        return [(1.0,)]
    if domain_tag in ("square", "annulus_region"):
        return [(1.0, 0.0), (0.0, 1.0)]
    return None  # sphere: per-point tangent frame


ROTATED_DIRECTIONS = ((1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0)),
                      (1.0 / np.sqrt(2.0), -1.0 / np.sqrt(2.0)))


def birkhoff_conditions(field, ps_values, ps_derivs, deriv_directions=None):
    """Emit (functionals, data) for values on one set and slopes on another.

    ``field`` provides vectorized ``value(points)`` and ``gradient(points)``
    (the gradient is the plain derivative in 1D and a tangent vector on the
    sphere).  Every point of ``ps_values`` contributes an evaluation
    condition; every point of ``ps_derivs`` contributes one directional
    derivative per direction.  On the sphere, directions default to the
    orthonormal tangent frame at each point.
    """
    functionals = []
    data = []
    vals = np.asarray(field.value(ps_values.points), dtype=np.float64)
    for p, v in zip(np.atleast_1d(ps_values.points), vals):
        functionals.append(LinearFunctional.value(p))
        data.append(float(v))

    dpts = ps_derivs.points
    grads = np.asarray(field.gradient(dpts), dtype=np.float64)
    if ps_derivs.domain_tag == "sphere":
        e1, e2 = _basis.tangent_frame(dpts)
        for i in range(len(ps_derivs)):
            for v in (e1[i], e2[i]):
                functionals.append(LinearFunctional.derivative(dpts[i], v))
                data.append(float(grads[i] @ v))
        return functionals, np.asarray(data)

    directions = deriv_directions
    if directions is None:
        directions = default_directions(ps_derivs.domain_tag)
    directions = [np.atleast_1d(np.asarray(v, dtype=np.float64)) for v in directions]
    for v in directions:
        _validation.check_unit(v, v.size)
    pts1d = ps_derivs.domain_tag == "interval"
    for i in range(len(ps_derivs)):
        p = dpts[i]
        gi = np.atleast_1d(grads[i])
        for v in directions:
            functionals.append(LinearFunctional.derivative(p, v if not pts1d else v[0]))
            data.append(float(gi @ v))
    return functionals, np.asarray(data)
