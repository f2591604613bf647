"""End-to-end benchmark runs: transform, propagate, invert, compare."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field, replace
from typing import IO, Any, Callable, Sequence

import numpy as np

from .. import cfd6, hopfcole, splitting
from ..analytic import examples as exm
from ..errors import BurgersPimError, DomainError, StageError
from ..grid import Axis, ErrorReport, Field, Grid, convergence_orders, error_norms
from ..pim import affine_blocks
from .config import RunConfig

COMPONENTS = ("u", "v", "w")
ORDER_FLOOR = 1e-12


@dataclass
class SampleResult:
    """Numerical and reference fields at one output time."""

    t: float
    errors: dict[str, ErrorReport]
    numeric: list[np.ndarray] = field(repr=False)
    reference: list[np.ndarray] = field(repr=False)
    phi_error: ErrorReport | None = None
    phi_numeric: np.ndarray | None = field(default=None, repr=False)
    phi_min: float | None = None


@dataclass
class RunReport:
    """Result of one run with its configuration echo."""

    config: RunConfig
    grid: Grid
    oracle_kind: str
    samples: list[SampleResult]
    wall_clock: float
    diagnostics: dict[str, Any] = field(default_factory=dict)
    passed: bool = True

    @property
    def final(self) -> SampleResult:
        return self.samples[-1]

    def linf(self, component: str = "u") -> float:
        return self.final.errors[component].linf

    def summary(self) -> dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "oracle_kind": self.oracle_kind,
            "grid": list(self.grid.shape),
            "samples": [
                {
                    "t": s.t,
                    "errors": {k: e.as_dict() for k, e in s.errors.items()},
                    "phi_error": s.phi_error.as_dict() if s.phi_error else None,
                    "phi_min": s.phi_min,
                }
                for s in self.samples
            ],
            "diagnostics": self.diagnostics,
            "passed": self.passed,
            "wall_clock_s": self.wall_clock,
        }


def _stage(name: str, fn: Callable[[], Any]) -> Any:
    try:
        return fn()
    except StageError:
        raise
    except BurgersPimError as exc:
        raise StageError(name, exc) from exc


def _grid_for(cfg: RunConfig) -> Grid:
    ex = exm.get_example(cfg.example_id)
    a, b = ex.domain
    return Grid(tuple(Axis(a, b, n) for n in cfg.n))


def _step_counts(cfg: RunConfig) -> list[int]:
    times = cfg.sample_times or (cfg.t_final,)
    out = []
    for t in times:
        k = round(t / cfg.tau)
        if k < 0 or abs(k * cfg.tau - t) > 1e-9 * max(1.0, t):
            raise DomainError(f"sample time {t} is not a multiple of tau {cfg.tau}")
        out.append(k)
    if out != sorted(out):
        raise DomainError("sample times must be increasing")
    return out


def _velocity_fns(example_id: int, dim: int, omega: float, eps: float) -> list[Callable[..., np.ndarray]]:
    def make(k: int) -> Callable[..., np.ndarray]:
        return lambda *c: exm.initial_velocity(example_id, c, omega, eps)[k]

    return [make(k) for k in range(dim)]


def run_example(cfg: RunConfig) -> RunReport:
    """Forward transform, per-axis propagation, inverse transform, comparison."""
    cfg = cfg.resolved()
    ex = exm.get_example(cfg.example_id)
    if ex.heat_only:
        return solve_heat_dirichlet(cfg)
    start = time.perf_counter()
    omega = cfg.omega_value
    grid = _stage("grid", lambda: _grid_for(cfg))
    phi_kinds = (ex.phi_kind,) * ex.dim if cfg.boundary == "auto" else (cfg.boundary,) * ex.dim
    state = _stage(
        "forward",
        lambda: hopfcole.forward_nd(
            _velocity_fns(ex.example_id, ex.dim, omega, cfg.epsilon),
            omega,
            grid,
            potential=lambda *c: exm.initial_potential(ex.example_id, c, omega, cfg.epsilon),
            phi_kinds=phi_kinds,
        ),
    )
    sp = _stage(
        "propagator",
        lambda: splitting.build_split_propagator(
            grid, omega, cfg.tau, splitting.needed_kinds(state), cfg.scheme, cfg.bisection_order
        ),
    )
    coords = grid.coords()
    samples = []
    done = 0
    for k in _step_counts(cfg):
        state = _stage("advance", lambda: splitting.advance(sp, state, k - done, cfg.stepping))
        done = k
        t = k * cfg.tau
        vel = _stage("inverse", lambda: hopfcole.inverse(state, differenced=cfg.gradient == "differenced"))
        ref = _stage("oracle", lambda: exm.exact_velocity(ex.example_id, coords, t, omega, cfg.epsilon))
        errs = {}
        for name, num, r in zip(COMPONENTS, vel, ref):
            errs[name] = error_norms(num, Field(grid, np.broadcast_to(r, grid.shape)), cfg.l2_convention)
        phi_ref = _stage("oracle", lambda: exm.exact_potential(ex.example_id, coords, t, omega, cfg.epsilon))
        phi_err = error_norms(state.phi, Field(grid, np.broadcast_to(phi_ref, grid.shape)), cfg.l2_convention)
        samples.append(
            SampleResult(
                t,
                errs,
                [v.values for v in vel],
                [np.broadcast_to(r, grid.shape) for r in ref],
                phi_err,
                state.phi.values,
                float(state.phi.values.min()),
            )
        )
    report = RunReport(cfg, grid, ex.oracle_kind, samples, time.perf_counter() - start)
    report.diagnostics["phi_kinds"] = list(phi_kinds)
    report.diagnostics["phi_min_initial"] = float(np.min(exm.initial_potential(ex.example_id, grid.mesh(), omega, cfg.epsilon)))
    report.passed = _check_assertions(report)
    return report


def _check_assertions(report: RunReport) -> bool:
    lim = report.config.assert_linf
    if lim is None:
        return True
    return all(e.linf <= lim for s in report.samples for e in s.errors.values())


def solve_heat_dirichlet(
    cfg: RunConfig,
    initial: Callable[[np.ndarray], np.ndarray] | None = None,
    boundary: Callable[[float], tuple[float, float]] | None = None,
    exact: Callable[[np.ndarray, float], np.ndarray] | None = None,
) -> RunReport:
    """1D heat equation with time-dependent Dirichlet data by boundary elimination.

    Interior unknowns obey y' = omega (H_II y + H_IB g(t)) with the closure
    operator. Each step is y <- T y + P1 r(t) + P2 (r(t + tau) - r(t)) / tau,
    r = H_IB g, which is exact for boundary data linear over the step. The
    callables default to the registered example's exact solution.
    """
    cfg = cfg.resolved()
    ex = exm.get_example(cfg.example_id)
    if ex.dim != 1:
        raise DomainError("solve_heat_dirichlet handles one-dimensional runs only")
    start = time.perf_counter()
    omega = cfg.omega_value
    grid = _grid_for(cfg)
    x = grid.coords()[0]
    if exact is None:
        exact = lambda xs, t: exm.exact_potential(ex.example_id, [xs], t, omega, cfg.epsilon)  # noqa: E731
    if initial is None:
        initial = lambda xs: exact(xs, 0.0)  # noqa: E731
    if boundary is None:
        boundary = lambda t: tuple(float(v) for v in exact(np.array([x[0], x[-1]]), t))  # noqa: E731
    kind = "closure" if cfg.boundary == "auto" else cfg.boundary
    gen = _stage("generator", lambda: cfd6.build_generator(kind, x.size, grid.spacings[0], omega))
    m, hib = cfd6.dirichlet_blocks(gen)
    prop, p1, p2 = _stage("propagator", lambda: affine_blocks(m, cfg.tau, cfg.bisection_order))
    y = np.asarray(initial(x), dtype=float)[1:-1].copy()
    samples = []
    step_no = 0
    for k in _step_counts(cfg):
        while step_no < k:
            t0 = step_no * cfg.tau
            r0 = hib @ np.asarray(boundary(t0))
            r1 = hib @ np.asarray(boundary(t0 + cfg.tau))
            y = y + prop.increment @ y + p1 @ r0 + p2 @ ((r1 - r0) / cfg.tau)
            step_no += 1
        t = k * cfg.tau
        g = boundary(t)
        full = np.concatenate([[g[0]], y, [g[1]]])
        ref = np.asarray(exact(x, t), dtype=float)
        err = error_norms(Field(grid, full), Field(grid, ref), cfg.l2_convention)
        samples.append(SampleResult(t, {"u": err}, [full], [ref]))
    report = RunReport(cfg, grid, ex.oracle_kind, samples, time.perf_counter() - start)
    eig = np.linalg.eigvals(m)
    report.diagnostics["interior_max_real_eig"] = float(eig.real.max())
    report.diagnostics["boundary_kind"] = kind
    report.passed = _check_assertions(report)
    return report


@dataclass
class ConvergenceTable:
    """Errors and observed orders along a grid ladder."""

    example_id: int
    ns: list[int]
    linf: dict[str, list[float]]
    orders: dict[str, list[float | None]]
    reports: list[RunReport] = field(repr=False)

    def rows(self) -> list[dict[str, Any]]:
        out = []
        for i, n in enumerate(self.ns):
            row: dict[str, Any] = {"n": n}
            for comp, errs in self.linf.items():
                row[f"linf_{comp}"] = errs[i]
                if i == 0:
                    row[f"order_{comp}"] = None
                else:
                    o = self.orders[comp][i - 1]
                    row[f"order_{comp}"] = "floor" if o is None else o
            out.append(row)
        return out


def convergence_study(cfg: RunConfig, ladder: Sequence[int] | None = None) -> ConvergenceTable:
    """Run a grid ladder at fixed tau and tabulate L_inf and log2 ratios."""
    ns = list(ladder or cfg.ladder or ())
    if len(ns) < 3:
        raise DomainError("a convergence study needs at least three grid levels")
    reports = [run_example(replace(cfg, n=(n,), ladder=None)) for n in ns]
    comps = list(reports[0].final.errors)
    linf = {c: [r.final.errors[c].linf for r in reports] for c in comps}
    orders = {c: convergence_orders(linf[c], ORDER_FLOOR) for c in comps}
    return ConvergenceTable(cfg.example_id, ns, linf, orders, reports)


def write_csv(report: RunReport, stream: IO[str]) -> None:
    """Pointwise CSV: coordinates, t, numeric and reference components, max error, oracle."""
    dim = report.grid.rank
    comps = list(report.samples[0].errors)
    header = list("xyz"[:dim]) + ["t"] + [f"{c}_num" for c in comps] + [f"{c}_ref" for c in comps] + ["abs_err", "oracle"]
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    mesh = np.meshgrid(*report.grid.coords(), indexing="ij")
    flat_x = [m.ravel() for m in mesh]
    for s in report.samples:
        nums = [np.asarray(v).ravel() for v in s.numeric]
        refs = [np.asarray(v).ravel() for v in s.reference]
        err = np.max(np.abs(np.array(nums) - np.array(refs)), axis=0)
        for i in range(flat_x[0].size):
            vals = [p[i] for p in flat_x] + [s.t] + [v[i] for v in nums] + [v[i] for v in refs] + [err[i]]
            writer.writerow([_fmt(v) for v in vals] + [report.oracle_kind])


def _fmt(v: float) -> str:
    return repr(float(v))


def csv_text(report: RunReport) -> str:
    buf = io.StringIO()
    write_csv(report, buf)
    return buf.getvalue()


def summary_json(report: RunReport) -> str:
    return json.dumps(report.summary(), indent=2, sort_keys=True, default=_json_default)


def _json_default(obj: Any) -> Any:
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


def default_configs() -> list[RunConfig]:
    """One run per example with its default parameters."""
    return [RunConfig(example_id=i) for i in sorted(exm.EXAMPLES)]
