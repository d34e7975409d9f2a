"""numba-compiled kernels. Mirrors _kernels_numpy exactly."""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from ._series import (
    erf_inv_scalar,
    sawtooth_h_prime_scalar,
    sawtooth_h_scalar,
)

BACKEND = "numba"

_erf_inv = njit(cache=True)(erf_inv_scalar)
_h = njit(cache=True)(sawtooth_h_scalar)
_hp = njit(cache=True)(sawtooth_h_prime_scalar)


@njit(cache=True)
def erf_vec(x):
    out = np.empty_like(x)
    for i in range(x.size):
        out[i] = math.erf(x[i])
    return out


@njit(cache=True)
def erf_inv_vec(y):
    out = np.empty_like(y)
    for i in range(y.size):
        out[i] = _erf_inv(y[i])
    return out


@njit(cache=True)
def sawtooth_h_vec(x):
    out = np.empty_like(x)
    for i in range(x.size):
        out[i] = _h(x[i])
    return out


@njit(cache=True)
def sawtooth_h_prime_vec(x):
    out = np.empty_like(x)
    for i in range(x.size):
        out[i] = _hp(x[i])
    return out


@njit(cache=True)
def hprime_restricted_scan(n_points, exclusion):
    """Min/max of |h'| over the grid j/n_points, j < n_points, keeping points
    with |x - 1/4| >= exclusion and |x - 3/4| >= exclusion."""
    lo = np.inf
    hi = -np.inf
    for j in range(n_points):
        x = j / n_points
        if abs(x - 0.25) < exclusion or abs(x - 0.75) < exclusion:
            continue
        v = abs(_hp(x))
        if v < lo:
            lo = v
        if v > hi:
            hi = v
    return lo, hi
