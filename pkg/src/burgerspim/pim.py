"""Precise-integration matrix exponential.

T(tau) = exp(H tau) is built from a fourth-order Taylor increment at
dt = tau / 2^n followed by n doubling rounds on the increment alone,
T_a <- 2 T_a + T_a T_a. The identity is never added while squaring, so the
small increment keeps full relative precision.
"""

from __future__ import annotations

import hashlib
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .cfd6 import Generator
from .errors import DimensionError, DomainError, OverflowGuardError
from .grid import Field

DEFAULT_BISECTION_ORDER = 20


def taylor_increment(h_matrix: np.ndarray, dt: float) -> np.ndarray:
    """Fourth-order Taylor increment exp(H dt) - I, Horner nested.

    Returns H dt (I + H dt/2 (I + H dt/3 (I + H dt/4))).
    """
    if dt <= 0:
        raise DomainError(f"dt must be positive, got {dt}")
    a = np.asarray(h_matrix, dtype=float) * dt
    scale = float(np.abs(a).sum(axis=1).max()) if a.size else 0.0
    if scale > 0.1:
        warnings.warn(f"||H dt|| = {scale:.3g} is large for a fourth-order increment", RuntimeWarning, stacklevel=2)
    inc = a / 4.0
    inc = a @ inc / 3.0 + a / 3.0
    inc = a @ inc / 2.0 + a / 2.0
    inc = a @ inc + a
    if not np.all(np.isfinite(inc)):
        raise OverflowGuardError("Taylor increment is not finite")
    return inc


def square_up(increment: np.ndarray, n: int) -> np.ndarray:
    """Apply T_a <- 2 T_a + T_a T_a exactly n times."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    ta = np.array(increment, dtype=float, copy=True)
    for _ in range(n):
        # Overflow is reported by the finiteness guard below.
        with np.errstate(over="ignore", invalid="ignore"):
            ta = 2.0 * ta + ta @ ta
        if not np.all(np.isfinite(ta)):
            raise OverflowGuardError("increment overflowed while squaring; generator unstable or dt wrong")
    return ta


def compose_increments(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """Increment of (I + second)(I + first) without forming either product with I."""
    return first + second + second @ first


def fingerprint(h_matrix: np.ndarray, tau: float) -> str:
    digest = hashlib.sha256()
    digest.update(np.ascontiguousarray(h_matrix, dtype=float).tobytes())
    digest.update(repr(float(tau)).encode())
    return digest.hexdigest()[:16]


@dataclass(frozen=True)
class Propagator:
    """T(tau) held as its increment T(tau) - I."""

    increment: np.ndarray = field(repr=False)
    tau: float
    bisection_order: int = DEFAULT_BISECTION_ORDER
    generator_fingerprint: str = ""

    @property
    def n(self) -> int:
        return self.increment.shape[0]

    def matrix(self) -> np.ndarray:
        """Materialize I + increment (for diagnostics and tests only)."""
        return np.eye(self.n) + self.increment

    def compose(self, other: Propagator) -> Propagator:
        """Propagator for ``other`` after ``self``, with tau summed."""
        if other.n != self.n:
            raise DimensionError("cannot compose propagators of different size")
        inc = compose_increments(self.increment, other.increment)
        return Propagator(inc, self.tau + other.tau, self.bisection_order, self.generator_fingerprint)

    def power(self, k: int) -> Propagator:
        """T(tau)^k by binary powering in increment form; k = 0 gives the identity."""
        if k < 0:
            raise DomainError(f"power must be non-negative, got {k}")
        result = np.zeros_like(self.increment)
        base = self.increment
        m = k
        while m:
            if m & 1:
                result = compose_increments(result, base)
            m >>= 1
            if m:
                base = 2.0 * base + base @ base
        if not np.all(np.isfinite(result)):
            raise OverflowGuardError("propagator power overflowed")
        return Propagator(result, self.tau * k, self.bisection_order, self.generator_fingerprint)


def identity_propagator(n: int, tau: float) -> Propagator:
    return Propagator(np.zeros((n, n)), tau, 0, "identity")


def build_propagator(gen: Generator | np.ndarray, tau: float, n: int = DEFAULT_BISECTION_ORDER) -> Propagator:
    """exp(H tau) via the Taylor increment at tau/2^n and n squarings."""
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau}")
    hm = gen.h_matrix if isinstance(gen, Generator) else np.asarray(gen, dtype=float)
    dt = tau / 2.0**n
    inc = square_up(taylor_increment(hm, dt), n)
    return Propagator(inc, float(tau), n, fingerprint(hm, tau))


def increment_scale(gen: Generator | np.ndarray, tau: float, n: int = DEFAULT_BISECTION_ORDER) -> float:
    """Diagnostic ||H||_inf * tau / 2^n."""
    hm = gen.h_matrix if isinstance(gen, Generator) else np.asarray(gen)
    return float(np.abs(hm).sum(axis=1).max()) * tau / 2.0**n


def apply(prop: Propagator, field_: Field | np.ndarray) -> Field | np.ndarray:
    """Return phi + increment @ phi (identity applied implicitly)."""
    values = field_.values if isinstance(field_, Field) else np.asarray(field_, dtype=float)
    if values.shape[0] != prop.n:
        raise DimensionError(f"field length {values.shape[0]} does not match propagator size {prop.n}")
    out = values + prop.increment @ values
    return field_.with_values(out) if isinstance(field_, Field) else out


def affine_blocks(m: np.ndarray, tau: float, n: int = DEFAULT_BISECTION_ORDER) -> tuple[Propagator, np.ndarray, np.ndarray]:
    """Blocks for an inhomogeneous linear step y' = M y + r(t).

    Returns (T, P1, P2) with T = exp(M tau), P1 = tau phi_1(tau M) and
    P2 = tau^2 phi_2(tau M), read off the exponential of the augmented matrix
    [[M, I, 0], [0, 0, I], [0, 0, 0]]. With r linear over the step,
    y(t + tau) = T y + P1 r(t) + P2 r'(t) exactly.
    """
    k = m.shape[0]
    big = np.zeros((3 * k, 3 * k))
    big[:k, :k] = m
    big[:k, k : 2 * k] = np.eye(k)
    big[k : 2 * k, 2 * k :] = np.eye(k)
    full = build_propagator(big, tau, n)
    inc = full.increment
    prop = Propagator(inc[:k, :k].copy(), float(tau), n, fingerprint(m, tau))
    return prop, inc[:k, k : 2 * k].copy(), inc[:k, 2 * k :].copy()


def expm_ref(a: np.ndarray, taylor_degree: int = 30) -> np.ndarray:
    """Reference exponential: scaling and squaring with a long Taylor kernel.

    The scaled matrix has norm at most 1/4, the Taylor terms are accumulated
    with Kahan compensation, and the result is squared back up. Used only as
    an oracle for the precise-integration path.
    """
    a = np.asarray(a, dtype=float)
    norm = float(np.abs(a).sum(axis=1).max()) if a.size else 0.0
    s = max(0, math.ceil(math.log2(norm / 0.25))) if norm > 0.25 else 0
    x = a / 2.0**s
    k = a.shape[0]
    total = np.eye(k)
    comp = np.zeros((k, k))
    term = np.eye(k)
    for j in range(1, taylor_degree + 1):
        term = term @ x / j
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if np.abs(term).max() < 1e-18 * np.abs(total).max():
            break
    for _ in range(s):
        total = total @ total
    return total
