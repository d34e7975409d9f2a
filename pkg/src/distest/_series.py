"""Scalar cores shared by both kernel backends.

Everything in here is written in the numba-compilable subset (math calls,
plain loops, module-level array constants) so the numba backend can compile
these exact functions and the numpy backend can call them directly.
"""

from __future__ import annotations

import math

import numpy as np

TWO_PI = 2.0 * math.pi
INV_SQRT_PI_2 = 2.0 / math.sqrt(math.pi)  # erf'(x) = INV_SQRT_PI_2 * exp(-x^2)

# Fourier coefficients of the smoothed sawtooth h(x) = sum_k (1/k) a_k sin(2k pi x)
# and h'(x) = sum_k 2 pi a_k cos(2k pi x), a_k = exp(-2 k^2 pi^2).  Terms are kept
# while (1/k) a_k (resp. 2 pi a_k) >= 1e-40; the k=3 term is ~2e-78.
_terms = []
_k = 1
while True:
    a_k = math.exp(-2.0 * _k * _k * math.pi * math.pi)
    if a_k / _k < 1e-40 and TWO_PI * a_k < 1e-40:
        break
    _terms.append(a_k)
    _k += 1
SAWTOOTH_A = np.array(_terms, dtype=np.float64)
del _terms, _k


def erf_inv_scalar(y: float) -> float:
    """Inverse error function on (-1, 1); caller validates the domain.

    Safeguarded Newton: the iterate is forced to stay inside a maintained
    sign-change bracket, falling back to bisection whenever a Newton step
    leaves it, so convergence is unconditional and deterministic.
    """
    if y == 0.0:
        return 0.0
    a = abs(y)
    lo = 0.0
    hi = 1.0
    while math.erf(hi) < a:
        lo = hi
        hi *= 2.0
    # Crude but scale-correct start: ~a for small a, ~sqrt(-log(1-a^2)) near 1.
    x = math.sqrt(-math.log((1.0 - a) * (1.0 + a)))
    if not (lo < x < hi):
        x = 0.5 * (lo + hi)
    for _ in range(80):
        f = math.erf(x) - a
        if f < 0.0:
            lo = x
        else:
            hi = x
        if abs(f) <= 1e-15:
            break
        step = f / (INV_SQRT_PI_2 * math.exp(-x * x))
        xn = x - step
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        if xn == x:
            break
        x = xn
    return x if y > 0.0 else -x


def sawtooth_h_scalar(x: float) -> float:
    # 1-periodic; reduce first so large arguments keep full precision.
    xr = x - math.floor(x)
    s = 0.0
    for k in range(SAWTOOTH_A.shape[0]):
        s += SAWTOOTH_A[k] / (k + 1) * math.sin(TWO_PI * (k + 1) * xr)
    return s


def sawtooth_h_prime_scalar(x: float) -> float:
    xr = x - math.floor(x)
    s = 0.0
    for k in range(SAWTOOTH_A.shape[0]):
        s += TWO_PI * SAWTOOTH_A[k] * math.cos(TWO_PI * (k + 1) * xr)
    return s
