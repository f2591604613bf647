"""Command-line interface: solve, convergence, oracle, stability, bench."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .. import cfd6
from ..analytic import examples as exm
from ..analytic.coeffs import bessel_coeffs_1d, bessel_coeffs_2d, fourier_weights, series_coeffs_3d
from ..errors import BurgersPimError
from ..verify import check_generator_spectrum
from .config import RunConfig
from .runner import convergence_study, default_configs, run_example, summary_json, write_csv


def _add_run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON file with RunConfig fields")
    p.add_argument("--example", type=int, dest="example_id", help="example id 1..9")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--re", type=float)
    g.add_argument("--omega", type=float)
    p.add_argument("--n", type=int, nargs="+", help="nodes per axis (one value repeats)")
    p.add_argument("--tau", type=float)
    p.add_argument("--t-final", type=float, dest="t_final")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--scheme", choices=("lie", "strang"))
    p.add_argument("--bisection-order", type=int, dest="bisection_order")
    p.add_argument("--l2", choices=("weighted", "rms"), dest="l2_convention")
    p.add_argument("--stepping", choices=("power", "loop"))
    p.add_argument("--boundary", choices=("auto",) + cfd6.BOUNDARY_KINDS)
    p.add_argument("--gradient", choices=("analytic", "differenced"))
    p.add_argument("--sample-times", type=float, nargs="+", dest="sample_times")
    p.add_argument("--assert-linf", type=float, dest="assert_linf", help="fail (exit 1) if any L_inf exceeds this")
    p.add_argument("--csv", type=Path, help="write pointwise CSV here ('-' for stdout)")
    p.add_argument("--summary", type=Path, help="write summary JSON here (default stdout)")
    p.add_argument("--echo-config", type=Path, dest="echo_config", help="write the resolved config JSON here")
    p.add_argument("--dump-matrices", type=Path, dest="dump_matrices", help="write A, B and H per axis here")


_RUN_FIELDS = (
    "example_id",
    "re",
    "omega",
    "n",
    "tau",
    "t_final",
    "epsilon",
    "scheme",
    "bisection_order",
    "l2_convention",
    "stepping",
    "boundary",
    "gradient",
    "sample_times",
    "assert_linf",
)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if getattr(args, "config", None):
        data.update(json.loads(Path(args.config).read_text()))
    for name in _RUN_FIELDS:
        v = getattr(args, name, None)
        if v is not None:
            data[name] = v
    if "re" in data and "omega" in data and getattr(args, "re", None) is not None:
        data.pop("omega")
    elif "re" in data and "omega" in data and getattr(args, "omega", None) is not None:
        data.pop("re")
    if "example_id" not in data:
        raise SystemExit("an example id is required (--example or config file)")
    return RunConfig.from_dict(data)


def _write(path: Path | None, text: str) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        path.write_text(text)


def _dump_matrices(cfg: RunConfig, path: Path) -> None:
    cfg = cfg.resolved()
    ex = exm.get_example(cfg.example_id)
    a, b = ex.domain
    if ex.heat_only:
        kinds = ["closure"]
    elif cfg.boundary == "auto":
        kinds = ["dirichlet", "neumann"]
    else:
        kinds = [cfg.boundary]
    with open(path, "w") as fh:
        for axis, n in enumerate(cfg.n):
            h = (b - a) / (n - 1)
            for kind in kinds:
                op = cfd6.assemble(kind, n, h)
                gen = cfd6.form_generator(op, cfg.omega_value)
                cfd6.dump_matrix(op.a_matrix, fh, f"axis{axis}:{kind}:A")
                cfd6.dump_matrix(op.b_matrix, fh, f"axis{axis}:{kind}:B")
                cfd6.dump_matrix(gen.h_matrix, fh, f"axis{axis}:{kind}:H")


def cmd_solve(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    if args.echo_config:
        args.echo_config.write_text(cfg.resolved().to_json() + "\n")
    if args.dump_matrices:
        _dump_matrices(cfg, args.dump_matrices)
    report = run_example(cfg)
    if args.csv:
        if str(args.csv) == "-":
            write_csv(report, sys.stdout)
        else:
            with open(args.csv, "w", newline="") as fh:
                write_csv(report, fh)
    _write(args.summary, summary_json(report))
    return 0 if report.passed else 1


def cmd_convergence(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    ladder = args.ladder or cfg.ladder
    table = convergence_study(cfg, ladder)
    rows = table.rows()
    out = {"example_id": table.example_id, "rows": rows}
    ok = True
    if args.min_order is not None:
        for comp, orders in table.orders.items():
            ok &= all(o is None or o >= args.min_order for o in orders)
    out["passed"] = ok
    _write(args.summary, json.dumps(out, indent=2, sort_keys=True))
    return 0 if ok else 1


def _oracle_table(example_id: int, omega: float, max_index: int) -> tuple[list[str], list[list[float]]]:
    ex = exm.get_example(example_id)
    if example_id in (3, 7, 9):
        if ex.dim == 1:
            b = bessel_coeffs_1d(omega, max_index)
        elif ex.dim == 2:
            b = bessel_coeffs_2d(omega, max_index)
        else:
            b = series_coeffs_3d(omega, max_index)
        c = fourier_weights(max_index, ex.dim) * b
    elif example_id == 4:
        c = exm.series_oracle(4, omega).coeffs
        c = c[: max_index + 1]
    else:
        raise SystemExit(f"example {example_id} has a closed form; use --points")
    header = list("abc"[: ex.dim]) + ["C"]
    rows = [[*idx, float(c[idx])] for idx in np.ndindex(*c.shape)]
    return header, rows


def cmd_oracle(args: argparse.Namespace) -> int:
    ex = exm.get_example(args.example_id)
    omega = args.omega if args.omega is not None else 1.0 / (args.re if args.re is not None else ex.re)
    lines = []
    if args.coeffs is not None:
        header, rows = _oracle_table(ex.example_id, omega, args.coeffs)
        lines.append(",".join(header))
        lines += [",".join(repr(v) if isinstance(v, float) else str(v) for v in r) for r in rows]
    else:
        pts = [tuple(float(v) for v in p.split(",")) for p in args.points]
        if any(len(p) != ex.dim for p in pts):
            raise SystemExit(f"points need {ex.dim} coordinates")
        coords = [np.array([p[k] for p in pts]) for k in range(ex.dim)]
        vel = exm.exact_velocity(ex.example_id, coords, args.t, omega, args.epsilon, tensor=False)
        phi = exm.exact_potential(ex.example_id, coords, args.t, omega, args.epsilon, tensor=False)
        comps = list("uvw"[: len(vel)])
        lines.append(",".join(list("xyz"[: ex.dim]) + ["t"] + comps + ["phi", "oracle"]))
        for i, p in enumerate(pts):
            vals = list(p) + [args.t] + [float(np.ravel(v)[i]) for v in vel] + [float(np.ravel(phi)[i])]
            lines.append(",".join(repr(float(v)) for v in vals) + f",{ex.oracle_kind}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_stability(args: argparse.Namespace) -> int:
    results = []
    ok = True
    for n in args.n:
        h = (1.0 / n) if args.kind == "periodic" else 1.0 / (n - 1)
        for omega in args.omega:
            gen = cfd6.build_generator(args.kind, n, h, omega)
            rep = check_generator_spectrum(gen, args.kind, tau=args.tau, n_bisect=args.bisection_order)
            results.append(rep.as_dict())
            ok &= rep.passed or args.kind != "periodic"
    _write(args.out, json.dumps({"reports": results, "passed": ok}, indent=2, sort_keys=True))
    return 0 if ok else 1


def cmd_bench(args: argparse.Namespace) -> int:
    out = []
    for cfg in default_configs():
        if args.stepping:
            cfg = replace(cfg, stepping=args.stepping)
        report = run_example(cfg)
        s = report.summary()
        out.append(
            {
                "example_id": cfg.example_id,
                "title": exm.get_example(cfg.example_id).title,
                "oracle_kind": report.oracle_kind,
                "grid": s["grid"],
                "t": report.final.t,
                "linf": {k: e.linf for k, e in report.final.errors.items()},
                "l2": {k: e.l2 for k, e in report.final.errors.items()},
                "wall_clock_s": report.wall_clock,
            }
        )
        if args.out_dir:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            (args.out_dir / f"example{cfg.example_id}_summary.json").write_text(summary_json(report) + "\n")
    _write(args.summary, json.dumps({"runs": out}, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="burgerspim", description="Hopf-Cole / compact-FD / precise-integration Burgers' solver")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one configuration")
    _add_run_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("convergence", help="run a grid ladder")
    _add_run_args(p)
    p.add_argument("--ladder", type=int, nargs="+")
    p.add_argument("--min-order", type=float, dest="min_order")
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("oracle", help="exact values or coefficient tables as CSV")
    p.add_argument("--example", type=int, dest="example_id", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--re", type=float)
    g.add_argument("--omega", type=float)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--epsilon", type=float, default=2.0)
    p.add_argument("--points", nargs="+", default=["0.25"], help="points like 0.25,0.5")
    p.add_argument("--coeffs", type=int, help="dump coefficients up to this index instead")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("stability", help="spectrum and propagator radius report")
    p.add_argument("--n", type=int, nargs="+", default=[16, 32, 64])
    p.add_argument("--omega", type=float, nargs="+", default=[1.0, 0.01])
    p.add_argument("--kind", choices=cfd6.BOUNDARY_KINDS, default="periodic")
    p.add_argument("--tau", type=float, default=5e-4)
    p.add_argument("--bisection-order", type=int, default=20, dest="bisection_order")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("bench", help="all nine examples with default settings")
    p.add_argument("--out-dir", type=Path, dest="out_dir")
    p.add_argument("--stepping", choices=("power", "loop"))
    p.add_argument("--summary", type=Path)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.func(args))
    except BurgersPimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
