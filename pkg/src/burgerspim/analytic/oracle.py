"""Truncated cosine-series solutions of the heat and Burgers' problems."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import DomainError, SingularTransformError
from .coeffs import family_coeffs, family_phi0, fourier_weights
from .quadrature import cosine_coefficients

DEFAULT_TRUNCATION = 40
TAIL_TOL = 1e-15
DENOMINATOR_FLOOR = 1e-300


@dataclass(frozen=True)
class FourierOracle:
    """phi(x, t) = sum C_alpha exp(-|alpha|^2 pi^2 omega t) prod cos(alpha_k pi x_k).

    ``coeffs`` has shape (M,) * dim and already includes the A factors.
    """

    omega: float
    coeffs: np.ndarray = field(repr=False)
    source: str = "bessel"

    @property
    def dim(self) -> int:
        return self.coeffs.ndim

    @property
    def truncation(self) -> int:
        return self.coeffs.shape[0]

    def _decayed(self, t: float) -> np.ndarray:
        if t < 0:
            raise DomainError(f"t must be non-negative, got {t}")
        m = self.truncation
        d1 = np.exp(-(np.arange(m) ** 2) * math.pi**2 * self.omega * t)
        c = self.coeffs
        for k in range(self.dim):
            shape = [1] * self.dim
            shape[k] = m
            c = c * d1.reshape(shape)
        return c

    def _basis(self, x: np.ndarray, derivative: bool) -> np.ndarray:
        a = np.arange(self.truncation)
        arg = math.pi * np.outer(np.asarray(x, dtype=float).ravel(), a)
        if derivative:
            # d/dx cos(a pi x) = -a pi sin(a pi x)
            return -math.pi * a * np.sin(arg)
        return np.cos(arg)

    def _contract(self, c: np.ndarray, coords: Sequence[np.ndarray], deriv_axis: int | None, tensor: bool) -> np.ndarray:
        mats = [self._basis(x, deriv_axis == k) for k, x in enumerate(coords)]
        letters = "abc"[: self.dim]
        if tensor:
            outs = "ijk"[: self.dim]
            subscripts = letters + "," + ",".join(o + l for o, l in zip(outs, letters)) + "->" + outs
        else:
            subscripts = letters + "," + ",".join("i" + l for l in letters) + "->i"
        return np.einsum(subscripts, c, *mats, optimize=True)

    def phi(self, coords: Sequence[np.ndarray], t: float, tensor: bool = True) -> np.ndarray:
        """Series value on the tensor product of ``coords`` (or pointwise)."""
        self._check(coords)
        return self._contract(self._decayed(t), coords, None, tensor)

    def grad(self, coords: Sequence[np.ndarray], t: float, axis: int, tensor: bool = True) -> np.ndarray:
        """Derivative of the series along ``axis``."""
        self._check(coords)
        return self._contract(self._decayed(t), coords, axis, tensor)

    def velocity(self, coords: Sequence[np.ndarray], t: float, tensor: bool = True) -> list[np.ndarray]:
        """u_k = -2 omega phi_k / phi."""
        c = self._decayed(t)
        den = self._contract(c, coords, None, tensor)
        if np.any(den <= DENOMINATOR_FLOOR):
            raise SingularTransformError("series denominator is not positive")
        return [-2.0 * self.omega * self._contract(c, coords, k, tensor) / den for k in range(self.dim)]

    def _check(self, coords: Sequence[np.ndarray]) -> None:
        if len(coords) != self.dim:
            raise DomainError(f"expected {self.dim} coordinate arrays, got {len(coords)}")

    def tail_ratio(self) -> float:
        """Mass of the outermost two index shells relative to the total."""
        m = self.truncation
        mag = np.abs(self.coeffs)
        idx = np.indices(mag.shape).max(axis=0)
        return float(mag[idx >= m - 2].sum() / mag.sum())


def _auto(build: Callable[[int], np.ndarray], truncation: int, tol: float, limit: int = 400) -> np.ndarray:
    m = truncation
    while True:
        c = build(m)
        mag = np.abs(c)
        idx = np.indices(mag.shape).max(axis=0)
        if mag[idx >= m - 2].sum() <= tol * mag.sum() or m >= limit:
            return c
        m += 20


def family_oracle(omega: float, dim: int, truncation: int = DEFAULT_TRUNCATION, tol: float = TAIL_TOL) -> FourierOracle:
    """Oracle for phi0 = exp(-(1 - prod cos(pi x_k)) / (2 omega pi)).

    Truncation starts at ``truncation`` and grows until the outer shells
    carry less than ``tol`` of the coefficient mass.
    """
    limit = 400 if dim < 3 else 120
    c = _auto(lambda m: family_coeffs(omega, dim, m - 1), truncation, tol, limit)
    return FourierOracle(omega, c, "bessel" if dim < 3 else "hypergeometric")


def quadrature_oracle(
    phi0: Callable[..., np.ndarray], omega: float, dim: int, truncation: int = DEFAULT_TRUNCATION, tol: float = TAIL_TOL
) -> FourierOracle:
    """Oracle whose coefficients are Simpson integrals of an arbitrary phi0."""

    def build(m: int) -> np.ndarray:
        return fourier_weights(m - 1, dim) * cosine_coefficients(phi0, dim, m - 1)

    limit = 400 if dim == 1 else 80
    return FourierOracle(omega, _auto(build, truncation, tol, limit), "quadrature")


def series_solution(oracle: FourierOracle, point: Sequence[float], t: float) -> tuple[float, ...]:
    """Velocity components at one point from the differentiated series ratio."""
    coords = [np.array([float(p)]) for p in point]
    return tuple(float(v[0]) for v in oracle.velocity(coords, t, tensor=False))


__all__ = [
    "FourierOracle",
    "family_oracle",
    "family_phi0",
    "quadrature_oracle",
    "series_solution",
]
