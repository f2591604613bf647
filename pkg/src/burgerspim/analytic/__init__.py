"""Exact-solution oracles: special functions, quadrature, coefficient tables."""

from .coeffs import (
    bessel_coeffs_1d,
    bessel_coeffs_2d,
    family_coeffs,
    family_phi0,
    fourier_weights,
    hypergeometric_coeff_3d,
    series_coeffs_3d,
)
from .examples import EXAMPLES, Example, exact_potential, exact_velocity, get_example, initial_potential, initial_velocity
from .oracle import FourierOracle, family_oracle, quadrature_oracle, series_solution
from .quadrature import cosine_coefficients, cumulative_integral, definite_integral
from .special import bessel_i, bessel_i_scaled, bessel_i_scaled_table, cos_power_coeffs, hyper_3f4, hyper_pfq, wallis

__all__ = [
    "EXAMPLES",
    "Example",
    "FourierOracle",
    "bessel_coeffs_1d",
    "bessel_coeffs_2d",
    "bessel_i",
    "bessel_i_scaled",
    "bessel_i_scaled_table",
    "cos_power_coeffs",
    "cosine_coefficients",
    "cumulative_integral",
    "definite_integral",
    "exact_potential",
    "exact_velocity",
    "family_coeffs",
    "family_oracle",
    "family_phi0",
    "fourier_weights",
    "get_example",
    "hyper_3f4",
    "hyper_pfq",
    "hypergeometric_coeff_3d",
    "initial_potential",
    "initial_velocity",
    "quadrature_oracle",
    "series_coeffs_3d",
    "series_solution",
    "wallis",
]
