"""Composite Simpson quadrature with Richardson refinement.

These are reference integrators: they know nothing about Bessel or
hypergeometric closed forms and are used to check them.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..errors import ConvergenceError

ArrayFn = Callable[[np.ndarray], np.ndarray]


def simpson_weights(m: int, length: float) -> np.ndarray:
    """Composite Simpson weights for m (even) equal subintervals of ``length``."""
    if m < 2 or m % 2:
        raise ValueError(f"Simpson needs an even number of subintervals, got {m}")
    w = np.ones(m + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (length / m / 3.0)


def _richardson(coarse: np.ndarray, fine: np.ndarray) -> np.ndarray:
    return fine + (fine - coarse) / 15.0


def definite_integral(f: ArrayFn, a: float, b: float, tol: float = 1e-14, m0: int = 8, m_max: int = 1 << 20) -> float:
    """Integral of a vectorized scalar function over [a, b]."""
    m = m0
    prev = None
    while m <= m_max:
        x = np.linspace(a, b, m + 1)
        cur = float(np.dot(simpson_weights(m, b - a), f(x)))
        if prev is not None:
            if abs(cur - prev) <= tol * max(1.0, abs(cur)):
                return float(_richardson(np.array(prev), np.array(cur)))
        prev = cur
        m *= 2
    raise ConvergenceError(f"Simpson quadrature did not reach tol {tol} with {m_max} intervals")


def cumulative_integral(f: ArrayFn, x: np.ndarray, tol: float = 1e-14, m0: int = 4, max_points: int = 1 << 24) -> np.ndarray:
    """Integral of f from x[0] to every node of the uniform vector x.

    Each cell is integrated with composite Simpson on m subintervals, doubling
    m (starting from 4) until all cells agree to ``tol``. ``f`` maps an array
    of abscissae (leading axis) to values whose leading axis matches; any
    trailing axes are integrated independently.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    h = x[1] - x[0]
    m = m0
    prev = None
    while (n - 1) * m + 1 <= max_points:
        fine = x[0] + np.arange((n - 1) * m + 1) * (h / m)
        vals = np.asarray(f(fine), dtype=float)
        w = simpson_weights(m, h)
        # cells[i] = sum_j w_j f(x_i + j h/m)
        idx = np.arange(n - 1)[:, None] * m + np.arange(m + 1)[None, :]
        cells = np.tensordot(w, vals[idx], axes=([0], [1]))
        if prev is not None:
            scale = max(1.0, float(np.abs(cells).max()))
            if float(np.abs(cells - prev).max()) <= tol * scale:
                cells = _richardson(prev, cells)
                out = np.zeros((n,) + cells.shape[1:])
                out[1:] = np.cumsum(cells, axis=0)
                return out
        prev = cells
        m *= 2
    raise ConvergenceError("cumulative Simpson quadrature did not converge")


def cosine_coefficients(
    phi0: Callable[..., np.ndarray],
    dim: int,
    max_index: int,
    tol: float = 1e-17,
    m0: int = 32,
    m_max: int = 4096,
) -> np.ndarray:
    """Table of integrals of phi0 * prod_k cos(alpha_k pi x_k) over [0, 1]^dim.

    ``phi0`` takes ``dim`` broadcastable coordinate arrays. The table is
    refined by doubling the Simpson resolution per axis until successive
    levels agree to ``tol`` absolutely, or until the per-axis resolution
    reaches ``m_max`` (capped for 3D to keep memory bounded).
    """
    if dim not in (1, 2, 3):
        raise ValueError(f"dim must be 1, 2 or 3, got {dim}")
    cap = m_max if dim < 3 else min(m_max, 256)
    alphas = np.arange(max_index + 1)
    m = m0
    prev = None
    last = None
    while m <= cap:
        x = np.linspace(0.0, 1.0, m + 1)
        w = simpson_weights(m, 1.0)
        basis = w[:, None] * np.cos(np.pi * np.outer(x, alphas))
        coords = []
        for k in range(dim):
            shape = [1] * dim
            shape[k] = m + 1
            coords.append(x.reshape(shape))
        vals = np.asarray(phi0(*coords), dtype=float) * np.ones([m + 1] * dim)
        if dim == 1:
            table = basis.T @ vals
        elif dim == 2:
            table = basis.T @ vals @ basis
        else:
            table = np.einsum("ijk,ia,jb,kc->abc", vals, basis, basis, basis, optimize=True)
        if prev is not None:
            diff = float(np.abs(table - prev).max())
            last = _richardson(prev, table)
            if diff <= tol:
                return last
        prev = table
        m *= 2
    if last is None:
        raise ConvergenceError("cosine_coefficients needs at least two refinement levels")
    return last
