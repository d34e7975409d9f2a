"""Gaussian and truncated-Gaussian samplers on RngStream."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, RejectionFailureError
from .rng import RngStream
from .special import normal_cdf, normal_quantile

# Below this interval mass, rejection is hopeless and we invert the CDF;
# below MIN_INTERVAL_MASS the conditional law is numerically meaningless.
REJECTION_MASS_THRESHOLD = 0.05
MIN_INTERVAL_MASS = 1e-12


def sample_gaussian(mean: float, std: float, rng: RngStream) -> float:
    if not std > 0:
        raise DomainError(f"std must be positive, got {std!r}")
    return float(rng.normal(mean, std))


def sample_gaussian_vec(mean: float, std: float, size: int, rng: RngStream) -> np.ndarray:
    if not std > 0:
        raise DomainError(f"std must be positive, got {std!r}")
    return rng.normal(mean, std, size)


def sample_truncated_gaussian(
    mean: float, std: float, lo: float, hi: float, rng: RngStream
) -> float:
    """One draw from N(mean, std^2) conditioned on [lo, hi]."""
    if not std > 0:
        raise DomainError(f"std must be positive, got {std!r}")
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo!r}, {hi!r}]")
    f_lo = normal_cdf(lo, mean, std)
    f_hi = normal_cdf(hi, mean, std)
    mass = f_hi - f_lo
    if mass < MIN_INTERVAL_MASS:
        raise RejectionFailureError(
            f"interval [{lo}, {hi}] has Gaussian mass {mass:.3e} < {MIN_INTERVAL_MASS}"
        )
    if mass >= REJECTION_MASS_THRESHOLD:
        # Exact rejection; expected tries 1/mass <= 20.
        while True:
            x = float(rng.normal(mean, std))
            if lo <= x <= hi:
                return x
    u = float(rng.uniform(f_lo, f_hi))
    u = min(max(u, math.nextafter(0.0, 1.0)), math.nextafter(1.0, 0.0))
    x = normal_quantile(u, mean, std)
    return min(max(x, lo), hi)


def sample_truncated_gaussian_vec(
    mean: float, std: float, lo: float, hi: float, size: int, rng: RngStream
) -> np.ndarray:
    if not std > 0:
        raise DomainError(f"std must be positive, got {std!r}")
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo!r}, {hi!r}]")
    f_lo = normal_cdf(lo, mean, std)
    f_hi = normal_cdf(hi, mean, std)
    mass = f_hi - f_lo
    if mass < MIN_INTERVAL_MASS:
        raise RejectionFailureError(
            f"interval [{lo}, {hi}] has Gaussian mass {mass:.3e} < {MIN_INTERVAL_MASS}"
        )
    if mass >= REJECTION_MASS_THRESHOLD:
        out = np.empty(size, dtype=np.float64)
        filled = 0
        while filled < size:
            batch = max(int((size - filled) / mass * 1.2) + 16, 16)
            x = rng.normal(mean, std, batch)
            good = x[(x >= lo) & (x <= hi)]
            take = min(good.size, size - filled)
            out[filled : filled + take] = good[:take]
            filled += take
        return out
    from .special import erf_inv_vec

    u = rng.uniform(f_lo, f_hi, size)
    tiny = math.nextafter(0.0, 1.0)
    u = np.clip(u, tiny, math.nextafter(1.0, 0.0))
    x = mean + std * math.sqrt(2.0) * erf_inv_vec(2.0 * u - 1.0)
    return np.clip(x, lo, hi)
