"""Error function, its inverse, normal CDF/quantile, and the order-statistic
median. Vector forms dispatch to the selected kernel backend."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ._backend import kernels
from ._series import erf_inv_scalar
from .errors import DomainError


def erf(x: float) -> float:
    """Gauss error function (2/sqrt(pi)) * integral_0^x exp(-t^2) dt."""
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"erf requires a finite argument, got {x!r}")
    return math.erf(x)


def erf_inv(y: float) -> float:
    """Inverse of erf on (-1, 1); |erf(erf_inv(y)) - y| <= 1e-12."""
    if not -1.0 < y < 1.0:
        raise DomainError(f"erf_inv requires |y| < 1, got {y!r}")
    return erf_inv_scalar(y)


def erf_vec(x: np.ndarray) -> np.ndarray:
    return kernels().erf_vec(np.ascontiguousarray(x, dtype=np.float64))


def erf_inv_vec(y: np.ndarray) -> np.ndarray:
    y = np.ascontiguousarray(y, dtype=np.float64)
    if np.any(np.abs(y) >= 1.0):
        raise DomainError("erf_inv requires |y| < 1 elementwise")
    return kernels().erf_inv_vec(y)


def normal_cdf(x: float, mean: float = 0.0, std: float = 1.0) -> float:
    return 0.5 * (1.0 + math.erf((x - mean) / (std * math.sqrt(2.0))))


def normal_cdf_vec(x: np.ndarray, mean: float = 0.0, std: float = 1.0) -> np.ndarray:
    z = (np.asarray(x, dtype=np.float64) - mean) / (std * math.sqrt(2.0))
    return 0.5 * (1.0 + erf_vec(z))


def normal_quantile(p: float, mean: float = 0.0, std: float = 1.0) -> float:
    if not 0.0 < p < 1.0:
        raise DomainError(f"normal_quantile requires p in (0, 1), got {p!r}")
    return mean + std * math.sqrt(2.0) * erf_inv(2.0 * p - 1.0)


def median(values: Sequence[float]) -> float:
    """Order-statistic median; mean of the two middle values for even counts."""
    if len(values) == 0:
        raise DomainError("median of an empty sequence")
    s = np.sort(np.asarray(values, dtype=np.float64))
    mid = s.size // 2
    if s.size % 2 == 1:
        return float(s[mid])
    return float(0.5 * (s[mid - 1] + s[mid]))
