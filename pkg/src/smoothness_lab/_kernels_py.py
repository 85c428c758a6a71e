"""Pure-NumPy reference implementations of the hot kernels.

The compiled extension ``_kernels`` exposes the same three functions with the
same signatures. Both are exercised by the test suite against each other.
"""

from __future__ import annotations

import math

import numpy as np


def row_lp_norms(rows: np.ndarray, p: float) -> np.ndarray:
    """Quadrature L_p norms of every row of a 2-D array.

    Parameters
    ----------
    rows : ndarray, shape (m, N)
        Real or complex samples on a uniform periodic grid of ``N`` points.
    p : float
        Exponent, ``p >= 1`` or ``inf``.

    Returns
    -------
    ndarray, shape (m,)
        ``(2*pi/N * sum |row|^p)^(1/p)`` or ``max |row|`` for ``p = inf``.
    """
    a = np.abs(np.asarray(rows))
    if a.ndim != 2:
        raise ValueError("rows must be two-dimensional")
    n = a.shape[1]
    if math.isinf(p):
        return a.max(axis=1) if n else np.zeros(a.shape[0])
    if p == 2.0:
        s = np.einsum("ij,ij->i", a, a)
    elif p == 1.0:
        s = a.sum(axis=1)
    else:
        s = (a**p).sum(axis=1)
    return (2.0 * math.pi / n * s) ** (1.0 / p)


def residual_terms(r: np.ndarray, p: float, eps: float):
    """Objective, gradient weights and Hessian weights of ``sum |r|^p``.

    Returns
    -------
    obj : float
        ``sum |r_j|^p``.
    grad : ndarray
        ``p |r_j|^(p-1) sign(r_j)``.
    hess : ndarray
        ``p (p-1) max(|r_j|, eps)^(p-2)``.
    """
    r = np.asarray(r, dtype=float)
    a = np.abs(r)
    ap = a ** (p - 1.0)
    obj = float(np.dot(ap, a))
    grad = p * ap * np.sign(r)
    hess = p * (p - 1.0) * np.maximum(a, eps) ** (p - 2.0)
    return obj, grad, hess


def shifted_difference_norms(values: np.ndarray, shifts: np.ndarray, r: int,
                             p: float, dx: float) -> np.ndarray:
    """Restricted-domain norms of r-th forward differences on [0, 1].

    Parameters
    ----------
    values : ndarray
        Samples ``f(i*dx)`` for ``i = 0..G``.
    shifts : ndarray of int
        Step sizes in grid units; ``r*s <= G`` is required.
    r : int
        Difference order.
    p : float
        Exponent ``>= 1`` or ``inf``.
    dx : float
        Grid spacing.

    Returns
    -------
    ndarray
        Trapezoid-rule ``||Delta_{s dx}^r f||_{L_p[0, 1 - r s dx]}`` per shift.
    """
    v = np.asarray(values, dtype=float)
    g = v.size - 1
    coef = [(-1) ** (r - i) * math.comb(r, i) for i in range(r + 1)]
    out = np.empty(len(shifts))
    for idx, s in enumerate(np.asarray(shifts, dtype=np.int64)):
        m = g - r * int(s)
        if m < 0:
            raise ValueError("shift too large for the grid")
        d = np.zeros(m + 1)
        for i, c in enumerate(coef):
            d += c * v[i * s:i * s + m + 1]
        a = np.abs(d)
        if math.isinf(p):
            out[idx] = a.max()
        elif m == 0:
            out[idx] = 0.0
        else:
            w = a**p
            total = w.sum() - 0.5 * (w[0] + w[-1])
            out[idx] = (dx * total) ** (1.0 / p)
    return out
