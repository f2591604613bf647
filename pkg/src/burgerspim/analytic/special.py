"""Special functions for the Fourier-series oracles."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..errors import ConvergenceError, DomainError, OverflowGuardError

MAX_ORDER = 200
MAX_ARG = 700.0
SERIES_SWITCH = 20.0


def _check_bessel_args(order: int, x: float) -> None:
    if order < 0 or int(order) != order:
        raise DomainError(f"Bessel order must be a non-negative integer, got {order}")
    if order > MAX_ORDER or x > MAX_ARG:
        raise OverflowGuardError(f"bessel_i guard: order {order} > {MAX_ORDER} or x {x} > {MAX_ARG}")
    if not x >= 0:
        raise DomainError(f"bessel_i needs x >= 0, got {x}")


def bessel_i_scaled_table(max_order: int, x: float) -> np.ndarray:
    """exp(-x) I_k(x) for k = 0..max_order.

    Uses the ascending series for x <= 20 and Miller's downward recurrence,
    normalized by exp(x) = I_0 + 2 sum I_k, above that.
    """
    _check_bessel_args(max_order, x)
    out = np.zeros(max_order + 1)
    if x == 0:
        out[0] = 1.0
        return out
    if x <= SERIES_SWITCH:
        q = 0.25 * x * x
        for k in range(max_order + 1):
            total, term, j = 1.0, 1.0, 0
            while True:
                j += 1
                term *= q / (j * (j + k))
                total += term
                if term < 1e-17 * total:
                    break
            log_lead = k * math.log(0.5 * x) - math.lgamma(k + 1) - x
            out[k] = math.exp(log_lead) * total if log_lead > -745 else 0.0
        return out
    start = max_order + int(math.sqrt(80.0 * x)) + 30
    y_next, y = 0.0, 1e-30
    norm = 0.0
    for k in range(start, 0, -1):
        # y_{k-1} = y_{k+1} + (2k/x) y_k
        if k <= max_order:
            out[k] = y
        norm += 2.0 * y
        y_prev = y_next + (2.0 * k / x) * y
        y_next, y = y, y_prev
        if y > 1e250:
            y_next /= 1e250
            y /= 1e250
            norm /= 1e250
            out /= 1e250
    out[0] = y
    norm += y
    return out / norm


def bessel_i_scaled(order: int, x: float) -> float:
    """exp(-x) I_order(x)."""
    return float(bessel_i_scaled_table(order, x)[order])


def bessel_i(order: int, x: float) -> float:
    """Modified Bessel function of the first kind, integer order."""
    return bessel_i_scaled(order, x) * math.exp(x)


def hyper_pfq(top: Sequence[float], bottom: Sequence[float], z: float, max_terms: int = 100_000) -> float:
    """Generalized hypergeometric series pFq(top; bottom; z), p <= q + 1.

    Terms follow the Pochhammer ratio recurrence. Summation stops once a term
    is below 1e-17 of the partial sum while terms are shrinking.
    """
    total, term = 1.0, 1.0
    for s in range(max_terms):
        num = z / (s + 1)
        for a in top:
            num *= a + s
        den = 1.0
        for b in bottom:
            if b + s == 0:
                if num == 0 or term == 0:
                    return total
                raise DomainError(f"bottom parameter {b} hits a pole at term {s + 1}")
            den *= b + s
        ratio = num / den
        term *= ratio
        total += term
        if term == 0 or (abs(term) < 1e-17 * abs(total) and abs(ratio) < 1):
            return total
        if not math.isfinite(total):
            raise OverflowGuardError("hypergeometric series overflowed")
    raise ConvergenceError(f"hypergeometric series did not converge in {max_terms} terms")


def hyper_3f4(top: Sequence[float], bottom: Sequence[float], z: float) -> float:
    """3F4(top; bottom; z), an entire function of z."""
    if len(top) != 3 or len(bottom) != 4:
        raise DomainError("hyper_3f4 needs three top and four bottom parameters")
    return hyper_pfq(top, bottom, z)


def cos_power_coeffs(gamma: int) -> list[int]:
    """Integer mu_e with cos(gamma t) = sum_e mu_e cos(t)^e.

    Built from the Chebyshev recurrence T_{k+1} = 2 c T_k - T_{k-1}.
    """
    if gamma < 0:
        raise DomainError(f"gamma must be non-negative, got {gamma}")
    prev, cur = [1], [0, 1]
    if gamma == 0:
        return prev
    for _ in range(gamma - 1):
        nxt = [0] + [2 * c for c in cur]
        for e, c in enumerate(prev):
            nxt[e] -= c
        prev, cur = cur, nxt
    return cur


def wallis(m: int) -> float:
    """Integral of cos(pi x)^m over [0, 1]: C(m, m/2) / 2^m for even m, else 0."""
    if m % 2:
        return 0.0
    return math.comb(m, m // 2) / 2.0**m
