"""Pure-numpy fallback kernels. Mirrors _kernels_numba exactly."""

from __future__ import annotations

import math

import numpy as np

from ._series import SAWTOOTH_A, TWO_PI, erf_inv_scalar

BACKEND = "numpy"

_erf_ufunc = np.frompyfunc(math.erf, 1, 1)


def erf_vec(x):
    return _erf_ufunc(x).astype(np.float64)


def erf_inv_vec(y):
    out = np.empty_like(y)
    flat_in = y.ravel()
    flat_out = out.ravel()
    for i in range(flat_in.size):
        flat_out[i] = erf_inv_scalar(flat_in[i])
    return out


def sawtooth_h_vec(x):
    xr = x - np.floor(x)
    s = np.zeros_like(xr)
    for k in range(SAWTOOTH_A.shape[0]):
        s += SAWTOOTH_A[k] / (k + 1) * np.sin(TWO_PI * (k + 1) * xr)
    return s


def sawtooth_h_prime_vec(x):
    xr = x - np.floor(x)
    s = np.zeros_like(xr)
    for k in range(SAWTOOTH_A.shape[0]):
        s += TWO_PI * SAWTOOTH_A[k] * np.cos(TWO_PI * (k + 1) * xr)
    return s


def hprime_restricted_scan(n_points, exclusion):
    x = np.arange(n_points, dtype=np.float64) / n_points
    keep = (np.abs(x - 0.25) >= exclusion) & (np.abs(x - 0.75) >= exclusion)
    v = np.abs(sawtooth_h_prime_vec(x[keep]))
    if v.size == 0:
        return np.inf, -np.inf
    return float(v.min()), float(v.max())
