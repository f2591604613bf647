"""Run configuration with a JSON round trip."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any

from ..analytic.examples import get_example
from ..cfd6 import BOUNDARY_KINDS
from ..errors import DomainError


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one benchmark run.

    Exactly one of ``re`` and ``omega`` may be set; when neither is, the
    example's default Reynolds number is used. Unset grid and time fields take
    the example defaults in ``resolved``.
    """

    example_id: int
    re: float | None = None
    omega: float | None = None
    n: tuple[int, ...] | None = None
    tau: float | None = None
    t_final: float | None = None
    epsilon: float = 2.0
    scheme: str = "lie"
    bisection_order: int = 20
    l2_convention: str = "weighted"
    stepping: str = "power"
    boundary: str = "auto"
    gradient: str = "analytic"
    sample_times: tuple[float, ...] | None = None
    ladder: tuple[int, ...] | None = None
    assert_linf: float | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        get_example(self.example_id)
        if self.re is not None and self.omega is not None:
            raise DomainError("give Re or omega, not both")
        for name in ("re", "omega", "tau", "t_final"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise DomainError(f"{name} must be positive, got {v}")
        if self.tau is not None and self.t_final is not None and self.t_final < self.tau:
            raise DomainError("t_final must be at least tau")
        if self.scheme not in ("lie", "strang"):
            raise DomainError(f"unknown scheme {self.scheme!r}")
        if self.stepping not in ("power", "loop"):
            raise DomainError(f"unknown stepping {self.stepping!r}")
        if self.boundary != "auto" and self.boundary not in BOUNDARY_KINDS:
            raise DomainError(f"unknown boundary {self.boundary!r}")
        if self.gradient not in ("analytic", "differenced"):
            raise DomainError(f"unknown gradient mode {self.gradient!r}")
        if self.l2_convention not in ("weighted", "rms"):
            raise DomainError(f"unknown L2 convention {self.l2_convention!r}")
        if isinstance(self.n, int):
            object.__setattr__(self, "n", (self.n,))
        for name in ("n", "sample_times", "ladder"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, tuple(v))

    @property
    def omega_value(self) -> float:
        if self.omega is not None:
            return float(self.omega)
        re = self.re if self.re is not None else get_example(self.example_id).re
        return 1.0 / float(re)

    def resolved(self) -> RunConfig:
        """Fill example defaults for unset grid and time fields."""
        ex = get_example(self.example_id)
        n = self.n or (ex.n,)
        if len(n) == 1:
            n = n * ex.dim
        if len(n) != ex.dim:
            raise DomainError(f"example {ex.example_id} needs {ex.dim} grid sizes, got {len(n)}")
        tau = self.tau if self.tau is not None else ex.tau
        t_final = self.t_final if self.t_final is not None else ex.t_final
        if t_final < tau:
            raise DomainError("t_final must be at least tau")
        return replace(self, n=tuple(int(v) for v in n), tau=float(tau), t_final=float(t_final))

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        for k, v in d.items():
            if isinstance(v, tuple):
                d[k] = list(v)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> RunConfig:
        return cls.from_dict(json.loads(text))
