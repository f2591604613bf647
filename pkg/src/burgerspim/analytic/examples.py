"""Registry of the nine benchmark problems and their exact solutions.

Each entry supplies the initial velocity, the normalized initial heat
potential phi0 = exp(-D / (2 omega)) with D the path integral of the initial
velocity from the domain origin, and a reference solution (closed form or
cosine series).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from ..errors import DomainError
from .coeffs import family_phi0
from .oracle import FourierOracle, family_oracle, quadrature_oracle

Arrays = Sequence[np.ndarray]
PI = math.pi


@dataclass(frozen=True)
class Example:
    """Static description of one benchmark problem."""

    example_id: int
    title: str
    dim: int
    domain: tuple[float, float]
    phi_kind: str
    oracle_kind: str
    re: float
    n: int
    tau: float
    t_final: float
    heat_only: bool = False


EXAMPLES: dict[int, Example] = {
    1: Example(1, "1D, rational sine profile", 1, (0.0, 1.0), "neumann", "closed-form", 100.0, 41, 5e-5, 0.1),
    2: Example(2, "1D, two-mode rational profile", 1, (0.0, 1.0), "neumann", "closed-form", 100.0, 41, 5e-4, 0.1),
    3: Example(3, "1D, u0 = sin(pi x)", 1, (0.0, 1.0), "neumann", "series", 10.0, 41, 5e-4, 0.4),
    4: Example(4, "1D, u0 = 4x(1-x)", 1, (0.0, 1.0), "neumann", "quadrature", 10.0, 41, 5e-4, 0.4),
    5: Example(5, "1D symmetric coupled case (heat equation)", 1, (-PI, PI), "dirichlet", "closed-form", 1.0, 41, 4e-4, 1.0, True),
    6: Example(6, "2D, rational sine profile", 2, (0.0, 1.0), "dirichlet", "closed-form", 10.0, 41, 5e-4, 1.0),
    7: Example(7, "2D, u0 = (sin cos, cos sin)", 2, (0.0, 1.0), "neumann", "series", 100.0, 41, 5e-4, 0.25),
    8: Example(8, "3D, rational sine profile", 3, (0.0, 1.0), "dirichlet", "closed-form", 100.0, 41, 5e-5, 1.0),
    9: Example(9, "3D, u0 = grad of cos cos cos", 3, (0.0, 1.0), "neumann", "series", 10.0, 41, 5e-5, 0.1),
}


def get_example(example_id: int) -> Example:
    try:
        return EXAMPLES[int(example_id)]
    except (KeyError, ValueError):
        raise DomainError(f"unknown example id {example_id!r}; known: {sorted(EXAMPLES)}") from None


def _c(x: np.ndarray, k: float = 1.0) -> np.ndarray:
    return np.cos(k * PI * x)


def _s(x: np.ndarray, k: float = 1.0) -> np.ndarray:
    return np.sin(k * PI * x)


def _decay(rate: float, omega: float, t: float) -> float:
    return math.exp(-rate * PI**2 * omega * t)


# Heat potentials with their gradients. Each returns (Phi, [Phi_x, ...]) at
# time t, unnormalized.


def _potential_1(c: Arrays, t: float, omega: float, eps: float):
    e = _decay(1, omega, t)
    (x,) = c
    return eps + e * _c(x), [-PI * e * _s(x)]


def _potential_2(c: Arrays, t: float, omega: float, eps: float):
    e1, e4 = _decay(1, omega, t), _decay(4, omega, t)
    (x,) = c
    return 4 + e1 * _c(x) + 2 * e4 * _c(x, 2), [-PI * e1 * _s(x) - 4 * PI * e4 * _s(x, 2)]


def _potential_5(c: Arrays, t: float, omega: float, eps: float):
    (x,) = c
    e = math.exp(-omega * t)
    return e * np.sin(x), [e * np.cos(x)]


def _potential_6(c: Arrays, t: float, omega: float, eps: float):
    e = _decay(5, omega, t)
    x, y = c
    return 2 + e * _s(x, 2) * _s(y), [2 * PI * e * _c(x, 2) * _s(y), PI * e * _s(x, 2) * _c(y)]


def _potential_8(c: Arrays, t: float, omega: float, eps: float):
    e = _decay(3, omega, t)
    x, y, z = c
    sx, sy, sz, cx, cy, cz = _s(x), _s(y), _s(z), _c(x), _c(y), _c(z)
    return 1 + e * sx * sy * sz, [PI * e * cx * sy * sz, PI * e * sx * cy * sz, PI * e * sx * sy * cz]


CLOSED_POTENTIALS: dict[int, Callable] = {1: _potential_1, 2: _potential_2, 5: _potential_5, 6: _potential_6, 8: _potential_8}


def initial_velocity(example_id: int, coords: Arrays, omega: float, eps: float = 2.0) -> list[np.ndarray]:
    """Initial velocity components on broadcastable coordinate arrays."""
    ex = get_example(example_id)
    if example_id in CLOSED_POTENTIALS:
        if ex.heat_only:
            (x,) = coords
            return [np.sin(x)]
        phi, grads = CLOSED_POTENTIALS[example_id](coords, 0.0, omega, eps)
        return [-2 * omega * g / phi for g in grads]
    if example_id == 3:
        return [_s(coords[0])]
    if example_id == 4:
        x = coords[0]
        return [4 * x * (1 - x)]
    if example_id == 7:
        x, y = coords
        return [_s(x) * _c(y), _c(x) * _s(y)]
    if example_id == 9:
        x, y, z = coords
        return [_s(x) * _c(y) * _c(z), _c(x) * _s(y) * _c(z), _c(x) * _c(y) * _s(z)]
    raise DomainError(f"no initial data for example {example_id}")


def initial_potential(example_id: int, coords: Arrays, omega: float, eps: float = 2.0) -> np.ndarray:
    """Closed-form phi0 = exp(-D / (2 omega)), equal to 1 at the domain origin."""
    ex = get_example(example_id)
    if ex.heat_only:
        return CLOSED_POTENTIALS[example_id](coords, 0.0, omega, eps)[0]
    if example_id in CLOSED_POTENTIALS:
        origin = [np.array(ex.domain[0]) for _ in range(ex.dim)]
        phi = CLOSED_POTENTIALS[example_id](coords, 0.0, omega, eps)[0]
        phi_origin = float(CLOSED_POTENTIALS[example_id](origin, 0.0, omega, eps)[0])
        return phi / phi_origin
    if example_id in (3, 7, 9):
        return family_phi0(omega, ex.dim)(*coords)
    if example_id == 4:
        x = coords[0]
        return np.exp(-(3 * x**2 - 2 * x**3) / (3 * omega))
    raise DomainError(f"no initial potential for example {example_id}")


@lru_cache(maxsize=32)
def series_oracle(example_id: int, omega: float) -> FourierOracle:
    """Cosine-series oracle for the examples without a closed form."""
    ex = get_example(example_id)
    if example_id in (3, 7, 9):
        return family_oracle(omega, ex.dim)
    if example_id == 4:
        return quadrature_oracle(lambda x: initial_potential(4, [x], omega), omega, 1)
    raise DomainError(f"example {example_id} has a closed form, not a series oracle")


def exact_velocity(example_id: int, coords: Arrays, t: float, omega: float, eps: float = 2.0, tensor: bool = True) -> list[np.ndarray]:
    """Reference velocity at time t.

    ``coords`` are per-axis 1D vectors (tensor product) when ``tensor`` is
    True, otherwise equal-length point lists.
    """
    ex = get_example(example_id)
    if example_id in CLOSED_POTENTIALS:
        mesh = _mesh(coords, tensor)
        if ex.heat_only:
            return [CLOSED_POTENTIALS[example_id](mesh, t, omega, eps)[0]]
        phi, grads = CLOSED_POTENTIALS[example_id](mesh, t, omega, eps)
        return [-2 * omega * g / phi * np.ones_like(phi) for g in grads]
    return series_oracle(example_id, omega).velocity(coords, t, tensor)


def exact_potential(example_id: int, coords: Arrays, t: float, omega: float, eps: float = 2.0, tensor: bool = True) -> np.ndarray:
    """Reference normalized heat potential phi at time t."""
    ex = get_example(example_id)
    if example_id in CLOSED_POTENTIALS:
        mesh = _mesh(coords, tensor)
        phi = CLOSED_POTENTIALS[example_id](mesh, t, omega, eps)[0]
        if ex.heat_only:
            return phi
        origin = [np.array(ex.domain[0]) for _ in range(ex.dim)]
        return phi / float(CLOSED_POTENTIALS[example_id](origin, 0.0, omega, eps)[0])
    return series_oracle(example_id, omega).phi(coords, t, tensor)


def _mesh(coords: Arrays, tensor: bool) -> list[np.ndarray]:
    if not tensor:
        return [np.asarray(c, dtype=float) for c in coords]
    d = len(coords)
    out = []
    for k, c in enumerate(coords):
        shape = [1] * d
        shape[k] = -1
        out.append(np.asarray(c, dtype=float).reshape(shape))
    return out
