"""Burgers' equation solver: Hopf-Cole linearization, sixth-order compact
differences, precise-integration exponentials and per-axis splitting."""

from .cfd6 import CompactOperator, Generator, assemble, assemble_closure, assemble_periodic, form_generator
from .grid import Axis, ErrorReport, Field, Grid, convergence_order, error_norms
from .hopfcole import HeatState, forward_1d, forward_nd, inverse
from .pim import Propagator, apply, build_propagator, expm_ref
from .splitting import SplitPropagator, apply_axis, build_split_propagator, step
from .verify import StabilityReport, check_curl, check_generator_spectrum

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "CompactOperator",
    "ErrorReport",
    "Field",
    "Generator",
    "Grid",
    "HeatState",
    "Propagator",
    "SplitPropagator",
    "StabilityReport",
    "apply",
    "apply_axis",
    "assemble",
    "assemble_closure",
    "assemble_periodic",
    "build_propagator",
    "build_split_propagator",
    "check_curl",
    "check_generator_spectrum",
    "convergence_order",
    "error_norms",
    "expm_ref",
    "form_generator",
    "forward_1d",
    "forward_nd",
    "inverse",
    "step",
]
