"""Numerical checks of spectral stability and the irrotational condition."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .cfd6 import Generator
from .errors import DimensionError, DomainError
from .grid import Field, Grid
from .pim import DEFAULT_BISECTION_ORDER, Propagator, build_propagator

MAX_SPECTRUM_N = 512
TOL_EIG = 1e-8
TOL_RHO = 1e-12


@dataclass(frozen=True)
class StabilityReport:
    """Spectrum summary of a generator and its propagator."""

    max_real_eig: float
    max_imag_eig: float
    spectral_radius_T: float
    passed: bool
    norm_h: float
    variant: str
    n: int
    tau: float

    def as_dict(self) -> dict:
        return asdict(self)


def spectral_radius(prop: Propagator) -> float:
    return float(np.abs(np.linalg.eigvals(prop.matrix())).max())


def check_generator_spectrum(
    gen: Generator,
    variant: str | None = None,
    tau: float = 5e-4,
    n_bisect: int = DEFAULT_BISECTION_ORDER,
    tol_eig: float = TOL_EIG,
    tol_rho: float = TOL_RHO,
) -> StabilityReport:
    """Eigenvalues of H and the spectral radius of exp(H tau).

    Real parts are compared against tol_eig * ||H||_2. For the periodic variant
    the imaginary parts must also be within that bound; for other variants
    complex pairs are reported but do not fail the check.
    """
    n = gen.n
    if n > MAX_SPECTRUM_N:
        raise DomainError(f"dense eigensolve limited to N <= {MAX_SPECTRUM_N}, got {n}")
    variant = variant or gen.boundary_kind
    try:
        eig = np.linalg.eigvals(gen.h_matrix)
    except np.linalg.LinAlgError as exc:
        raise DomainError(f"eigensolver failed: {exc}") from exc
    norm = float(np.linalg.norm(gen.h_matrix, 2))
    max_re = float(eig.real.max())
    max_im = float(np.abs(eig.imag).max())
    rho = spectral_radius(build_propagator(gen, tau, n_bisect))
    ok = max_re <= tol_eig * norm and rho <= 1.0 + tol_rho
    if variant == "periodic":
        ok = ok and max_im <= tol_eig * norm
    return StabilityReport(max_re, max_im, rho, bool(ok), norm, variant, n, float(tau))


def circulant_symbol(n: int, h: float, omega: float = 1.0) -> np.ndarray:
    """Closed-form eigenvalues of the periodic generator at the n roots of unity.

    lambda_j = omega * b(theta_j) / (h^2 a(theta_j)), theta_j = 2 pi j / n, with
    a = 1 + (4/11) cos(theta) and
    b = (3/22) cos(2 theta) + (24/11) cos(theta) - 51/22.
    """
    theta = 2.0 * np.pi * np.arange(n) / n
    a = 1.0 + (4.0 / 11.0) * np.cos(theta)
    b = (3.0 / 22.0) * np.cos(2 * theta) + (24.0 / 11.0) * np.cos(theta) - 51.0 / 22.0
    return omega * b / (h * h * a)


def check_curl(fields: Sequence[Field | np.ndarray], grid: Grid) -> float:
    """Largest |du_j/dx_i - du_i/dx_j| over all axis pairs.

    Uses second-order central differences (one-sided second order at the
    ends), which is enough for a diagnostic.
    """
    if grid.rank < 2:
        raise DimensionError("curl needs a grid of rank 2 or 3")
    vals = [f.values if isinstance(f, Field) else np.asarray(f, dtype=float) for f in fields]
    if len(vals) != grid.rank or any(v.shape != grid.shape for v in vals):
        raise DimensionError("need one field per axis, each matching the grid")
    worst = 0.0
    h = grid.spacings
    for i in range(grid.rank):
        for j in range(i + 1, grid.rank):
            dj_di = np.gradient(vals[j], h[i], axis=i, edge_order=2)
            di_dj = np.gradient(vals[i], h[j], axis=j, edge_order=2)
            worst = max(worst, float(np.abs(dj_di - di_dj).max()))
    return worst
