"""Uniform tensor grids, sampled fields, error norms and convergence orders."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .errors import DimensionError, DomainError, SizeError

MIN_NODES = 8

L2Convention = Literal["weighted", "rms"]


@dataclass(frozen=True)
class Axis:
    """One node-inclusive uniform axis on [a, b]."""

    a: float
    b: float
    n: int

    def __post_init__(self) -> None:
        if self.n < MIN_NODES:
            raise SizeError(f"axis needs at least {MIN_NODES} nodes, got {self.n}")
        if not (math.isfinite(self.a) and math.isfinite(self.b)) or self.b <= self.a:
            raise DomainError(f"invalid axis endpoints [{self.a}, {self.b}]")

    @property
    def h(self) -> float:
        return (self.b - self.a) / (self.n - 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.a + np.arange(self.n) * self.h

    def refined(self) -> Axis:
        """Halve the spacing: n -> 2n - 1, endpoints unchanged."""
        return Axis(self.a, self.b, 2 * self.n - 1)


@dataclass(frozen=True)
class Grid:
    """Tensor product of one to three uniform axes."""

    axes: tuple[Axis, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.axes) <= 3:
            raise DimensionError(f"grid rank must be 1, 2 or 3, got {len(self.axes)}")

    @classmethod
    def uniform(cls, a: float, b: float, n: int, rank: int = 1) -> Grid:
        """Build a grid with the same axis repeated ``rank`` times."""
        return cls(tuple(Axis(a, b, n) for _ in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(ax.n for ax in self.axes)

    @property
    def spacings(self) -> tuple[float, ...]:
        return tuple(ax.h for ax in self.axes)

    @property
    def cell_volume(self) -> float:
        return math.prod(self.spacings)

    def coords(self) -> list[np.ndarray]:
        """Per-axis node coordinate vectors."""
        return [ax.nodes for ax in self.axes]

    def mesh(self) -> list[np.ndarray]:
        """Broadcastable coordinate arrays (``ij`` indexing, no copies)."""
        out = []
        for k, x in enumerate(self.coords()):
            shape = [1] * self.rank
            shape[k] = x.size
            out.append(x.reshape(shape))
        return out

    def refined(self) -> Grid:
        return Grid(tuple(ax.refined() for ax in self.axes))


@dataclass(frozen=True)
class Field:
    """Real samples on a grid."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != self.grid.shape:
            raise DimensionError(f"field shape {vals.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(vals)):
            raise DomainError("field contains non-finite entries")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def with_values(self, values: np.ndarray) -> Field:
        return Field(self.grid, values)


@dataclass(frozen=True)
class ErrorReport:
    """Discrete error norms of one comparison."""

    l2: float
    linf: float
    n: int
    h: float
    convention: L2Convention = "weighted"

    def as_dict(self) -> dict:
        return {"l2": self.l2, "linf": self.linf, "n": self.n, "h": self.h, "l2_convention": self.convention}


def error_norms(numeric: Field, reference: Field, convention: L2Convention = "weighted") -> ErrorReport:
    """Compare two fields on the same grid.

    ``weighted`` gives sqrt(sum(h_1...h_d * e^2)); ``rms`` gives sqrt(mean(e^2)).
    Sums run in flat C order so results are reproducible.
    """
    if numeric.grid != reference.grid:
        raise DimensionError("error_norms needs fields on the same grid")
    e = np.abs(numeric.values - reference.values).ravel()
    linf = float(e.max()) if e.size else 0.0
    sq = math.fsum((e * e).tolist())
    if convention == "weighted":
        l2 = math.sqrt(numeric.grid.cell_volume * sq)
    elif convention == "rms":
        l2 = math.sqrt(sq / e.size)
    else:
        raise DomainError(f"unknown L2 convention {convention!r}")
    return ErrorReport(l2=l2, linf=linf, n=numeric.grid.shape[0], h=numeric.grid.spacings[0], convention=convention)


def convergence_order(coarse_err: float, fine_err: float) -> float:
    """Observed order for a halving of the spacing: log2(coarse/fine)."""
    if not (coarse_err > 0 and fine_err > 0):
        raise DomainError("convergence_order needs strictly positive errors")
    return math.log2(coarse_err / fine_err)


def convergence_orders(errors: Sequence[float], floor: float = 1e-12) -> list[float | None]:
    """Successive orders along a ladder; ``None`` once the finer error is below ``floor``."""
    out: list[float | None] = []
    for coarse, fine in zip(errors[:-1], errors[1:]):
        out.append(None if fine < floor else convergence_order(coarse, fine))
    return out
