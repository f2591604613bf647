"""Cosine-series coefficients of the transformed initial data.

The 1D, 2D and 3D families share the initial potential

    phi0 = exp(-(1 - prod_k cos(pi x_k)) / (2 omega pi)),

whose cosine coefficients are B_{alpha...} = integral of phi0 times the matching
cosine product over the unit cube. The series coefficients are
C = A * B with A = prod_k (1 if alpha_k == 0 else 2).
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from .special import bessel_i_scaled_table, cos_power_coeffs, hyper_3f4, wallis


def family_argument(omega: float) -> float:
    """z = 1 / (2 omega pi)."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    return 1.0 / (2.0 * omega * math.pi)


def fourier_weights(max_index: int, dim: int) -> np.ndarray:
    """A factors: product over axes of 1 (index 0) or 2 (otherwise)."""
    a = np.full(max_index + 1, 2.0)
    a[0] = 1.0
    out = a
    for _ in range(dim - 1):
        out = np.multiply.outer(out, a)
    return out


def family_phi0(omega: float, dim: int):
    """Callable phi0(*coords) for the cosine-product family."""
    z = family_argument(omega)

    def phi0(*coords: np.ndarray) -> np.ndarray:
        prod = np.cos(np.pi * coords[0])
        for c in coords[1:dim]:
            prod = prod * np.cos(np.pi * c)
        return np.exp(-z * (1.0 - prod))

    return phi0


def bessel_coeffs_1d(omega: float, max_index: int) -> np.ndarray:
    """B_alpha = exp(-z) I_alpha(z), alpha = 0..max_index."""
    return bessel_i_scaled_table(max_index, family_argument(omega))


def bessel_coeffs_2d(omega: float, max_index: int) -> np.ndarray:
    """B_{alpha beta} = exp(-z) I_p(z/2) I_q(z/2), p = (alpha+beta)/2, q = |alpha-beta|/2.

    Entries with alpha + beta odd are exactly zero.
    """
    w = 0.5 * family_argument(omega)
    # exp(-z) = exp(-w) * exp(-w), so each factor can be scaled separately.
    s = bessel_i_scaled_table(max_index, w)
    a = np.arange(max_index + 1)
    al, be = np.meshgrid(a, a, indexing="ij")
    even = (al + be) % 2 == 0
    p = (al + be) // 2
    q = np.abs(al - be) // 2
    return np.where(even, s[p] * s[q], 0.0)


def hypergeometric_coeff_3d(alpha: int, beta: int, gamma: int, omega: float) -> float:
    """B_{alpha beta gamma} by a finite sum of 3F4 terms.

    With a = max(alpha, beta), p = (alpha+beta)/2, q = |alpha-beta|/2 and
    cos(gamma t) = sum_e mu_e cos(t)^e,

        B = exp(-z) (z/4)^a / (p! q!) sum_e mu_e W(a+e)
            3F4((a+1)/2, a/2+1, (a+e+1)/2; a+1, p+1, q+1, (a+e)/2+1; z^2/4)

    where W(m) is the integral of cos(pi x)^m over [0, 1]. Tuples whose
    indices do not share parity vanish.
    """
    if min(alpha, beta, gamma) < 0:
        raise DomainError("indices must be non-negative")
    if (alpha + beta) % 2 or (beta + gamma) % 2:
        return 0.0
    z = family_argument(omega)
    a = max(alpha, beta)
    p = (alpha + beta) // 2
    q = abs(alpha - beta) // 2
    total = 0.0
    for e, mu in enumerate(cos_power_coeffs(gamma)):
        if mu == 0 or (a + e) % 2:
            continue
        f = hyper_3f4(((a + 1) / 2, a / 2 + 1, (a + e + 1) / 2), (a + 1, p + 1, q + 1, (a + e) / 2 + 1), z * z / 4)
        total += mu * wallis(a + e) * f
    log_pref = a * math.log(z / 4) - math.lgamma(p + 1) - math.lgamma(q + 1) - z if a else -z
    return math.exp(log_pref) * total


def series_coeffs_3d(omega: float, max_index: int) -> np.ndarray:
    """Full 3D table from the positive-term expansion of exp(z c1 c2 c3).

    B = sum_k exp(-z) z^k / k! f(k, alpha) f(k, beta) f(k, gamma) with
    f(k, a) = C(k, (k-a)/2) / 2^k when k >= a and k = a (mod 2), else 0. Every
    term is non-negative, so large indices lose no precision to cancellation.
    Mixed-parity tuples come out as exact zeros.
    """
    z = family_argument(omega)
    k_max = int(z + 12.0 * math.sqrt(z) + 40) + max_index
    ks = np.arange(k_max + 1)
    log_w = np.array([k * math.log(z) - math.lgamma(k + 1) - z for k in ks])
    f = np.zeros((k_max + 1, max_index + 1))
    for k in ks:
        for a in range(min(k, max_index) + 1):
            if (k - a) % 2 == 0:
                j = (k - a) // 2
                f[k, a] = math.exp(math.lgamma(k + 1) - math.lgamma(j + 1) - math.lgamma(k - j + 1) - k * math.log(2.0))
    w = np.exp(log_w)
    return np.einsum("k,ka,kb,kc->abc", w, f, f, f, optimize=True)


def family_coeffs(omega: float, dim: int, max_index: int) -> np.ndarray:
    """C = A * B for the cosine-product family in 1, 2 or 3 dimensions."""
    if dim == 1:
        b = bessel_coeffs_1d(omega, max_index)
    elif dim == 2:
        b = bessel_coeffs_2d(omega, max_index)
    elif dim == 3:
        b = series_coeffs_3d(omega, max_index)
    else:
        raise DomainError(f"dim must be 1, 2 or 3, got {dim}")
    return fourier_weights(max_index, dim) * b
