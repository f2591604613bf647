"""Modified Hopf-Cole transform between Burgers' velocities and heat states.

The heat potential phi = exp(-D / (2 omega)) and each of its gradient
components are all evolved as heat equations, so the inverse transform
u_k = -2 omega phi_k / phi needs no numerical differentiation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Literal, Sequence

import numpy as np

from .analytic.quadrature import cumulative_integral
from .errors import DimensionError, DomainError, SingularTransformError
from .grid import Field, Grid

PHI_FLOOR = 1e-300

VelocityFn = Callable[..., np.ndarray]
GradientMode = Literal["analytic", "differenced"]

_FLIP = {"neumann": "dirichlet", "dirichlet": "neumann"}


def gradient_kinds(phi_kinds: Sequence[str], axis: int) -> tuple[str, ...]:
    """Boundary kinds for d(phi)/dx_axis given the kinds of phi.

    Differentiating along an axis swaps even and odd reflection symmetry about
    the end nodes; the other axes are unaffected. Closure and periodic kinds
    carry over unchanged.
    """
    return tuple(_FLIP.get(k, k) if j == axis else k for j, k in enumerate(phi_kinds))


@dataclass(frozen=True)
class HeatState:
    """phi and its gradient components on one grid at one time.

    ``phi_kinds`` holds the boundary kind of phi per axis and ``phi_offset``
    the constant Dirichlet value phi is evolved about.
    """

    phi: Field
    grad: tuple[Field, ...]
    omega: float
    time: float = 0.0
    phi_kinds: tuple[str, ...] = ()
    phi_offset: float = 0.0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        rank = self.phi.grid.rank
        if len(self.grad) != rank:
            raise DimensionError(f"need {rank} gradient components, got {len(self.grad)}")
        if any(g.grid != self.phi.grid for g in self.grad):
            raise DimensionError("gradient components must share the grid of phi")
        if not self.omega > 0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        if not self.phi_kinds:
            object.__setattr__(self, "phi_kinds", ("neumann",) * rank)
        if len(self.phi_kinds) != rank:
            raise DimensionError("phi_kinds must list one kind per axis")
        _check_positive(self.phi.values)

    @property
    def grid(self) -> Grid:
        return self.phi.grid

    def fields(self) -> list[tuple[Field, tuple[str, ...], float]]:
        """(field, per-axis kinds, offset) for phi and every gradient component."""
        out = [(self.phi, self.phi_kinds, self.phi_offset)]
        for k, g in enumerate(self.grad):
            out.append((g, gradient_kinds(self.phi_kinds, k), 0.0))
        return out

    def with_values(self, phi: np.ndarray, grads: Sequence[np.ndarray], time: float) -> HeatState:
        return replace(
            self,
            phi=self.phi.with_values(phi),
            grad=tuple(g.with_values(v) for g, v in zip(self.grad, grads)),
            time=time,
        )


def _check_positive(values: np.ndarray) -> None:
    bad = np.argwhere(~(values > PHI_FLOOR))
    if bad.size:
        node = tuple(int(i) for i in bad[0])
        raise SingularTransformError(f"phi = {values[node]!r} at node {node} is not positive")


def _check_kappa(kappa: float) -> None:
    if kappa != 1.0:
        raise DomainError("only kappa = 1 is supported; kappa cancels in the transform")


def _dirichlet_offset(phi: np.ndarray, phi_kinds: Sequence[str]) -> float:
    return float(phi.flat[0]) if all(k == "dirichlet" for k in phi_kinds) else 0.0


def path_potential(u0: Sequence[VelocityFn], grid: Grid, tol: float = 1e-13) -> np.ndarray:
    """D(x) averaged over the cyclic axis-by-axis paths from the grid origin.

    For rank 2 the paths are (x then y) and (y then x); for rank 3 they are
    (x, y, z), (y, z, x) and (z, x, y). Each leg integrates the matching
    velocity component with axes already traversed at their target values and
    the remaining axes held at the origin.
    """
    rank = grid.rank
    coords = grid.coords()
    origin = [ax.a for ax in grid.axes]
    total = np.zeros(grid.shape)
    for start in range(rank):
        order = [(start + j) % rank for j in range(rank)]
        done: list[int] = []
        for axis in order:
            total = total + _leg(u0[axis], coords, origin, axis, tuple(done), tol)
            done.append(axis)
    return total / rank


def _leg(u: VelocityFn, coords: list[np.ndarray], origin: list[float], axis: int, free: tuple[int, ...], tol: float) -> np.ndarray:
    rank = len(coords)
    free_shape = [coords[k].size for k in free]

    def integrand(s: np.ndarray) -> np.ndarray:
        pts = []
        for k in range(rank):
            shape = [1] * (1 + len(free))
            if k == axis:
                shape[0] = s.size
                pts.append(s.reshape(shape))
            elif k in free:
                shape[1 + free.index(k)] = coords[k].size
                pts.append(coords[k].reshape(shape))
            else:
                pts.append(np.full(shape, origin[k]))
        return np.broadcast_to(u(*pts), (s.size, *free_shape))

    leg = cumulative_integral(integrand, coords[axis], tol=tol)
    # leg axes: (axis, *free); place them into full grid order.
    src = [axis, *free]
    shape = [1] * rank
    for pos, k in enumerate(src):
        shape[k] = leg.shape[pos]
    perm = np.argsort(src)
    return np.transpose(leg, perm).reshape(shape)


def forward_nd(
    u0: Sequence[VelocityFn],
    omega: float,
    grid: Grid,
    potential: Callable[..., np.ndarray] | None = None,
    phi_kinds: Sequence[str] | None = None,
    gradient: GradientMode = "analytic",
    kappa: float = 1.0,
) -> HeatState:
    """Burgers' initial velocity to the heat initial state.

    Args:
        u0: One callable per axis taking broadcastable coordinate arrays.
        omega: Viscosity 1/Re.
        grid: Target grid.
        potential: Optional closed form of phi0 = exp(-D / (2 omega)). Without
            it, D is integrated numerically along the averaged axis paths.
        phi_kinds: Boundary kind of phi per axis (default Neumann).
        gradient: ``analytic`` sets phi_k = -(u0_k / (2 omega)) phi; ``differenced``
            differences phi with second-order central differences instead.
        kappa: Must be 1.
    """
    _check_kappa(kappa)
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if len(u0) != grid.rank:
        raise DimensionError(f"need {grid.rank} velocity components, got {len(u0)}")
    mesh = grid.mesh()
    if potential is not None:
        phi = np.broadcast_to(potential(*mesh), grid.shape).astype(float)
    else:
        phi = np.exp(-path_potential(u0, grid) / (2.0 * omega))
    _check_positive(phi)
    if gradient == "analytic":
        grads = [-(np.broadcast_to(u(*mesh), grid.shape) / (2.0 * omega)) * phi for u in u0]
    elif gradient == "differenced":
        grads = [np.gradient(phi, grid.spacings[k], axis=k, edge_order=2) for k in range(grid.rank)]
    else:
        raise DomainError(f"unknown gradient mode {gradient!r}")
    kinds = tuple(phi_kinds) if phi_kinds else ("neumann",) * grid.rank
    return HeatState(
        phi=Field(grid, phi),
        grad=tuple(Field(grid, g) for g in grads),
        omega=float(omega),
        time=0.0,
        phi_kinds=kinds,
        phi_offset=_dirichlet_offset(phi, kinds),
    )


def forward_1d(
    u0: VelocityFn,
    omega: float,
    grid: Grid,
    potential: Callable[..., np.ndarray] | None = None,
    phi_kind: str = "neumann",
    gradient: GradientMode = "analytic",
    kappa: float = 1.0,
) -> HeatState:
    """One-dimensional ``forward_nd``."""
    if grid.rank != 1:
        raise DimensionError("forward_1d needs a rank-1 grid")
    return forward_nd([u0], omega, grid, potential, (phi_kind,), gradient, kappa)


def inverse(state: HeatState, differenced: bool = False) -> list[Field]:
    """Velocities u_k = -2 omega phi_k / phi.

    With ``differenced`` the gradients are recomputed from phi by central
    differences instead of using the evolved gradient fields.
    """
    phi = state.phi.values
    _check_positive(phi)
    if differenced:
        grads = [np.gradient(phi, state.grid.spacings[k], axis=k, edge_order=2) for k in range(state.grid.rank)]
    else:
        grads = [g.values for g in state.grad]
    return [Field(state.grid, -2.0 * state.omega * g / phi) for g in grads]


__all__ = ["HeatState", "forward_1d", "forward_nd", "gradient_kinds", "inverse", "path_potential"]
