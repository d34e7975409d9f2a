"""Smoothed sawtooth wave: the Fourier series

    h(x)  = sum_{k>=1} (1/k) exp(-2 k^2 pi^2) sin(2 k pi x)
    h'(x) = sum_{k>=1} 2 pi exp(-2 k^2 pi^2) cos(2 k pi x)

truncated once the term magnitude bound drops below 1e-40 (k <= 2 in float64;
the k=3 terms are ~1e-77). h is 1-periodic and odd about 0. For X ~ N(t, 1),
E[frac(X)] = 1/2 - (1/pi) h(t), which is what the rounded-bit estimator inverts.
"""

from __future__ import annotations

import math

import numpy as np

from ._backend import kernels
from ._series import sawtooth_h_prime_scalar, sawtooth_h_scalar
from .errors import DomainError


def sawtooth_h(x: float) -> float:
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"sawtooth_h requires a finite argument, got {x!r}")
    return sawtooth_h_scalar(x)


def sawtooth_h_prime(x: float) -> float:
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"sawtooth_h_prime requires a finite argument, got {x!r}")
    return sawtooth_h_prime_scalar(x)


def sawtooth_h_vec(x: np.ndarray) -> np.ndarray:
    return kernels().sawtooth_h_vec(np.ascontiguousarray(x, dtype=np.float64))


def sawtooth_h_prime_vec(x: np.ndarray) -> np.ndarray:
    return kernels().sawtooth_h_prime_vec(np.ascontiguousarray(x, dtype=np.float64))


def frac(x: float) -> float:
    """Fractional part with floor semantics: frac(-0.2) == 0.8."""
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"frac requires a finite argument, got {x!r}")
    return x - math.floor(x)


def frac_vec(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return x - np.floor(x)


def hprime_restricted_scan(n_points: int, exclusion: float) -> tuple[float, float]:
    """(min, max) of |h'| over the grid {j/n_points}, j < n_points, restricted
    to points at distance >= exclusion from both 1/4 and 3/4 (one period
    suffices: h' is 1-periodic)."""
    lo, hi = kernels().hprime_restricted_scan(int(n_points), float(exclusion))
    return float(lo), float(hi)
