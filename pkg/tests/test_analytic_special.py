from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest

from burgerspim.analytic import quadrature, special
from burgerspim.errors import DomainError, OverflowGuardError


def test_i0_of_one_frozen():
    assert special.bessel_i(0, 1.0) == pytest.approx(1.2660658777520082, rel=1e-15)


@pytest.mark.parametrize("x", [0.1, 1.0, 7.5, 19.9, 20.1, 45.0, 300.0])
def test_scaled_table_matches_mpmath(x):
    table = special.bessel_i_scaled_table(40, x)
    for k in range(41):
        ref = float(mpmath.besseli(k, x) * mpmath.exp(-x))
        assert table[k] == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_i5_of_ten_against_integral_representation():
    # I_n(x) = (1/pi) int_0^pi exp(x cos t) cos(n t) dt
    ref = quadrature.definite_integral(lambda t: np.exp(10 * np.cos(t)) * np.cos(5 * t), 0.0, math.pi) / math.pi
    assert special.bessel_i(5, 10.0) == pytest.approx(ref, rel=1e-12)


def test_bessel_at_zero_and_guards():
    t = special.bessel_i_scaled_table(3, 0.0)
    assert list(t) == [1.0, 0.0, 0.0, 0.0]
    with pytest.raises(DomainError):
        special.bessel_i(-1, 1.0)
    with pytest.raises(DomainError):
        special.bessel_i(1, -1.0)
    with pytest.raises(OverflowGuardError):
        special.bessel_i_scaled(201, 1.0)
    with pytest.raises(OverflowGuardError):
        special.bessel_i_scaled(0, 701.0)


@pytest.mark.parametrize(
    "top,bottom,z",
    [
        ((0.5, 1.0, 1.5), (1.0, 2.0, 3.0, 1.5), 2.0),
        ((1.5, 2.0, 2.5), (3.0, 2.0, 1.0, 2.5), 25.0),
        ((0.5,), (1.5,), -3.0),
        ((), (), 1.0),
    ],
)
def test_hyper_pfq_matches_mpmath(top, bottom, z):
    ref = float(mpmath.hyper(list(top), list(bottom), z))
    assert special.hyper_pfq(top, bottom, z) == pytest.approx(ref, rel=1e-13)


def test_hyper_edge_cases():
    assert special.hyper_pfq((1.0,), (2.0,), 0.0) == 1.0
    # A non-positive integer top parameter truncates the series to a polynomial.
    assert special.hyper_pfq((-2.0,), (1.0,), 1.0) == pytest.approx(float(mpmath.hyp1f1(-2, 1, 1)), rel=1e-15)
    with pytest.raises(DomainError):
        special.hyper_pfq((1.0,), (-1.0,), 0.5)
    with pytest.raises(DomainError):
        special.hyper_3f4((1.0,), (1.0,), 0.5)


def test_cos_power_coefficients():
    assert special.cos_power_coeffs(0) == [1]
    assert special.cos_power_coeffs(1) == [0, 1]
    assert special.cos_power_coeffs(4) == [1, 0, -8, 0, 8]
    t = np.linspace(0, 3, 7)
    for g in range(9):
        mu = special.cos_power_coeffs(g)
        np.testing.assert_allclose(sum(m * np.cos(t) ** e for e, m in enumerate(mu)), np.cos(g * t), atol=1e-12)
    with pytest.raises(DomainError):
        special.cos_power_coeffs(-1)


@pytest.mark.parametrize("m", range(9))
def test_wallis_against_quadrature(m):
    ref = quadrature.definite_integral(lambda x: np.cos(np.pi * x) ** m, 0.0, 1.0)
    assert special.wallis(m) == pytest.approx(ref, abs=1e-14)


def test_simpson_and_cumulative_integral():
    assert quadrature.definite_integral(np.exp, 0.0, 1.0) == pytest.approx(math.e - 1, rel=1e-14)
    x = np.linspace(0, 2, 11)
    np.testing.assert_allclose(quadrature.cumulative_integral(np.cos, x), np.sin(x), atol=1e-14)
    w = quadrature.simpson_weights(4, 1.0)
    assert w.sum() == pytest.approx(1.0) and w[1] == pytest.approx(4 / 12)
