"""Benchmark harness and command-line interface."""

from .config import RunConfig
from .runner import ConvergenceTable, RunReport, SampleResult, convergence_study, run_example, solve_heat_dirichlet, write_csv

__all__ = [
    "ConvergenceTable",
    "RunConfig",
    "RunReport",
    "SampleResult",
    "convergence_study",
    "run_example",
    "solve_heat_dirichlet",
    "write_csv",
]
