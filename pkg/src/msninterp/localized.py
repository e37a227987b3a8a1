"""Smoothly cut-off spectral kernels on the interval-as-torus and their
empirical localization.

The kernel Phi_n(x, y) = sum_k h(k/n) w_k T_k(x) T_k(y) (orthonormalized
Chebyshev products, C-infinity cutoff h) concentrates near the diagonal:
|Phi_n| <= c n / max(1, (n rho)^S) with rho the arccos distance.  The module
evaluates Phi_n directly and measures the constant c empirically.
"""

import csv
from dataclasses import dataclass

import numpy as np

from . import basis as _basis


def _psi(u):
    out = np.zeros_like(u)
    pos = u > 0
    out[pos] = np.exp(-1.0 / u[pos])
    return out


def cutoff_h(t):
    """C-infinity even cutoff: 1 on [0, 1/2], 0 on [1, inf).

    The transition is the normalized bump psi(2-2t) / (psi(2-2t) + psi(2t-1))
    with psi(u) = exp(-1/u) for u > 0, so h is smooth, nonincreasing on
    [0, inf), and h(3/4) = 1/2 by symmetry.
    """
    t = np.abs(np.asarray(t, dtype=np.float64))
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    out = np.zeros_like(t)
    out[t <= 0.5] = 1.0
    mid = (t > 0.5) & (t < 1.0)
    a = _psi(2.0 - 2.0 * t[mid])
    b = _psi(2.0 * t[mid] - 1.0)
    out[mid] = a / (a + b)
    return float(out[0]) if scalar else out


def eval_phi_n(n, x, y):
    """Phi_n(x, y) by direct summation over eigenvalues below n."""
    if n <= 0:
        raise ValueError("need n > 0")
    kmax = int(np.ceil(n)) - 1
    x = np.asarray(x, dtype=np.float64)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    k = np.arange(kmax + 1)
    hw = cutoff_h(k / n)
    hw[1:] *= 2.0  # orthonormalization factor of T_k, k >= 1
    tx = _basis.chebyshev_t(x, kmax)
    ty = _basis.chebyshev_t(y, kmax)
    out = (tx * hw) @ ty.T
    diag = np.einsum("ij,ij->i", tx * hw, ty) if tx.shape[0] == ty.shape[0] else None
    if tx.shape[0] == ty.shape[0]:
        out = diag
    return float(out[0]) if scalar else out


def torus_distance(x, y):
    """Arccos distance between interval points, the metric Phi_n decays in."""
    return np.abs(np.arccos(np.clip(x, -1, 1)) - np.arccos(np.clip(y, -1, 1)))


@dataclass
class DecayReport:
    """Empirical localization constants, per degree and overall."""

    per_n: dict
    c_emp: float
    order: int


def verify_decay(n_list, S, sample_count, seed=0):
    """Empirical constant in |Phi_n| <= c n / max(1, (n rho)^S).

    Draws random pairs with torus distance rho >= 4/n and maximizes
    |Phi_n| max(1, (n rho)^S) / n over samples, per degree and overall.
    """
    n_list = list(n_list)
    if not n_list:
        raise ValueError("n_list must be nonempty")
    if S < 0:
        raise ValueError("S must be nonnegative")
    rng = np.random.default_rng(seed)
    per_n = {}
    for n in n_list:
        theta = rng.uniform(0.0, np.pi, size=(sample_count, 2))
        keep = np.abs(theta[:, 0] - theta[:, 1]) >= 4.0 / n
        theta = theta[keep]
        x = np.cos(theta[:, 0])
        y = np.cos(theta[:, 1])
        rho = np.abs(theta[:, 0] - theta[:, 1])
        vals = np.abs(eval_phi_n(n, x, y))
        bound = np.maximum(1.0, (n * rho) ** S)
        per_n[n] = float((vals * bound / n).max())
    return DecayReport(per_n, max(per_n.values()), S)


def decay_csv(path, n_list, S, sample_count, seed=0):
    """Sampled (n, rho, |Phi_n|, bound) rows for plotting decay curves."""
    rng = np.random.default_rng(seed)
    report = verify_decay(n_list, S, sample_count, seed)
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "rho", "abs_phi", "bound"])
        for n in n_list:
            theta = rng.uniform(0.0, np.pi, size=(sample_count, 2))
            keep = np.abs(theta[:, 0] - theta[:, 1]) >= 4.0 / n
            theta = theta[keep]
            rho = np.abs(theta[:, 0] - theta[:, 1])
            vals = np.abs(eval_phi_n(n, np.cos(theta[:, 0]), np.cos(theta[:, 1])))
            bound = report.c_emp * n / np.maximum(1.0, (n * rho) ** S)
            for r, v, bd in zip(rho, vals, bound):
                writer.writerow([n, f"{r:.8g}", f"{v:.8g}", f"{bd:.8g}"])
    return report
