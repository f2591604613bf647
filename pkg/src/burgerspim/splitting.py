"""Per-axis exponential propagators applied across tensor grids."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from . import cfd6
from .errors import DimensionError, DomainError
from .grid import Field, Grid
from .hopfcole import HeatState
from .pim import DEFAULT_BISECTION_ORDER, Propagator, build_propagator

Scheme = Literal["lie", "strang"]

# Per-axis propagators keyed by boundary kind.
AxisPropagators = dict[str, Propagator]


def apply_axis(prop: Propagator, values: np.ndarray | Field, axis: int) -> np.ndarray | Field:
    """Multiply every grid line along ``axis`` by I + increment."""
    arr = values.values if isinstance(values, Field) else np.asarray(values, dtype=float)
    if not 0 <= axis < arr.ndim:
        raise DimensionError(f"axis {axis} out of range for rank {arr.ndim}")
    if arr.shape[axis] != prop.n:
        raise DimensionError(f"extent {arr.shape[axis]} along axis {axis} does not match propagator size {prop.n}")
    moved = np.moveaxis(arr, axis, 0)
    inc = (prop.increment @ moved.reshape(prop.n, -1)).reshape(moved.shape)
    out = np.moveaxis(moved + inc, 0, axis)
    out = np.ascontiguousarray(out)
    return values.with_values(out) if isinstance(values, Field) else out


@dataclass(frozen=True)
class SplitPropagator:
    """One set of per-kind propagators per axis, all for the same tau.

    For ``strang`` the first axis in ``order`` is applied as two half steps
    around the others, using ``half_first``.
    """

    axis_propagators: tuple[AxisPropagators, ...]
    tau: float
    scheme: str = "lie"
    order: tuple[int, ...] = ()
    half_first: AxisPropagators = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.scheme not in ("lie", "strang"):
            raise DomainError(f"unknown splitting scheme {self.scheme!r}")
        if not self.order:
            object.__setattr__(self, "order", tuple(range(len(self.axis_propagators))))
        if sorted(self.order) != list(range(len(self.axis_propagators))):
            raise DimensionError(f"axis order {self.order} is not a permutation")
        if self.scheme == "strang" and not self.half_first:
            raise DomainError("strang splitting needs half-step propagators for the first axis")

    @property
    def rank(self) -> int:
        return len(self.axis_propagators)

    def power(self, k: int) -> SplitPropagator:
        """Split propagator for k consecutive steps.

        Disjoint-axis contractions commute exactly, so k steps of any axis
        sequence equal each axis propagator raised to the k-th power.
        """
        return SplitPropagator(
            tuple({kind: p.power(k) for kind, p in ax.items()} for ax in self.axis_propagators),
            self.tau * k,
            self.scheme,
            self.order,
            {kind: p.power(k) for kind, p in self.half_first.items()},
        )

    def with_order(self, order: Sequence[int]) -> SplitPropagator:
        return SplitPropagator(self.axis_propagators, self.tau, self.scheme, tuple(order), self.half_first)

    def evolve(self, values: np.ndarray, kinds: Sequence[str], offset: float = 0.0) -> np.ndarray:
        """Advance one field whose boundary kind along axis k is kinds[k]."""
        if values.ndim != self.rank:
            raise DimensionError(f"field rank {values.ndim} does not match propagator rank {self.rank}")
        out = values - offset if offset else values
        first = self.order[0]
        if self.scheme == "strang":
            out = apply_axis(self.half_first[kinds[first]], out, first)
            for axis in self.order[1:]:
                out = apply_axis(self.axis_propagators[axis][kinds[axis]], out, axis)
            out = apply_axis(self.half_first[kinds[first]], out, first)
        else:
            for axis in self.order:
                out = apply_axis(self.axis_propagators[axis][kinds[axis]], out, axis)
        return out + offset if offset else out


def build_split_propagator(
    grid: Grid,
    omega: float,
    tau: float,
    kinds: Sequence[Sequence[str]],
    scheme: Scheme = "lie",
    n: int = DEFAULT_BISECTION_ORDER,
    order: Sequence[int] | None = None,
) -> SplitPropagator:
    """Build exp(H_k tau) for every axis k and every boundary kind listed for it.

    Args:
        grid: Tensor grid; axes with identical (n, h, kind) share one build.
        omega: Viscosity.
        tau: Step.
        kinds: kinds[k] lists the boundary kinds needed along axis k.
        scheme: ``lie`` (plain product) or ``strang``.
        n: Bisection order of the precise-integration build.
        order: Axis application order (default 0, 1, 2).
    """
    if len(kinds) != grid.rank:
        raise DimensionError("kinds must list the needed boundary kinds per axis")
    cache: dict[tuple, Propagator] = {}

    def get(axis: int, kind: str, step: float) -> Propagator:
        ax = grid.axes[axis]
        key = (ax.n, ax.h, kind, step)
        if key not in cache:
            gen = cfd6.build_generator(kind, ax.n, ax.h, omega)
            cache[key] = build_propagator(gen, step, n)
        return cache[key]

    axis_props = tuple({kind: get(axis, kind, tau) for kind in set(kinds[axis])} for axis in range(grid.rank))
    half: AxisPropagators = {}
    ordering = tuple(order) if order is not None else tuple(range(grid.rank))
    if scheme == "strang":
        first = ordering[0]
        half = {kind: get(first, kind, tau / 2) for kind in set(kinds[first])}
    return SplitPropagator(axis_props, float(tau), scheme, ordering, half)


def needed_kinds(state: HeatState) -> list[list[str]]:
    """Boundary kinds each axis must support to evolve every field of ``state``."""
    out: list[set[str]] = [set() for _ in range(state.grid.rank)]
    for _, kinds, _ in state.fields():
        for axis, kind in enumerate(kinds):
            out[axis].add(kind)
    return [sorted(s) for s in out]


def step(sp: SplitPropagator, state: HeatState) -> HeatState:
    """Advance phi and every gradient component by sp.tau."""
    if sp.rank != state.grid.rank:
        raise DimensionError("split propagator rank does not match the state grid")
    new = [sp.evolve(f.values, kinds, offset) for f, kinds, offset in state.fields()]
    return state.with_values(new[0], new[1:], state.time + sp.tau)


def advance(sp: SplitPropagator, state: HeatState, steps: int, mode: Literal["power", "loop"] = "power") -> HeatState:
    """Take ``steps`` steps, either one at a time or through powered propagators."""
    if steps < 0:
        raise DomainError(f"steps must be non-negative, got {steps}")
    if steps == 0:
        return state
    if mode == "power":
        return step(sp.power(steps), state)
    if mode == "loop":
        for _ in range(steps):
            state = step(sp, state)
        return state
    raise DomainError(f"unknown stepping mode {mode!r}")
