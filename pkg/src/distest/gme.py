"""One-bit sign protocol for Gaussian mean estimation, and the full-precision
averaging reference protocol.

Each machine normalizes its n samples to X_i = (1/(sigma sqrt(n))) sum_j X_ij,
which is exactly N(theta_bar, 1) with theta_bar = theta sqrt(n)/sigma, and
sends the single bit [X_i >= 0]. The decoder inverts the bit mean through
sqrt(2) erf^-1 and truncates to [-1, 1], so the protocol requires
|theta|_inf <= sigma/sqrt(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError
from .reports import RunReport
from .rng import RngStream
from .special import erf, erf_inv

_ERF_AT_1_OVER_SQRT2 = math.erf(1.0 / math.sqrt(2.0))


@dataclass(frozen=True)
class GaussianModel:
    """Estimation instance: m machines, n samples each, N(theta, sigma^2 I_d)."""

    theta: np.ndarray
    sigma: float
    n: int
    m: int
    d: int

    def __post_init__(self) -> None:
        theta = np.atleast_1d(np.asarray(self.theta, dtype=np.float64))
        object.__setattr__(self, "theta", theta)
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma!r}")
        if self.n < 1 or self.m < 1 or self.d < 1:
            raise DomainError("n, m, d must all be >= 1")
        if theta.size != self.d:
            raise DomainError(f"theta has {theta.size} entries, expected d={self.d}")

    @property
    def theta_bar(self) -> np.ndarray:
        """Mean in normalized units: theta * sqrt(n) / sigma."""
        return self.theta * math.sqrt(self.n) / self.sigma

    @property
    def scale(self) -> float:
        """sigma / sqrt(n): one normalized unit in original units."""
        return self.sigma / math.sqrt(self.n)


def sign_encode(samples: np.ndarray, sigma: float, n: int) -> int:
    """Machine-side bit: [normalized sample sum >= 0] (tie goes to 1)."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.size != n:
        raise DomainError(f"expected {n} samples, got {samples.size}")
    x = samples.sum() / (sigma * math.sqrt(n))
    return 1 if x >= 0 else 0


def sign_decode(bits: np.ndarray, sigma: float, n: int) -> float:
    """Coordinator-side estimate from the m wire bits (0/1 on the wire,
    mapped to +/-1 before averaging)."""
    bits = np.asarray(bits)
    if bits.size < 1:
        raise DomainError("need at least one bit")
    b_mean = float(np.mean(2.0 * bits - 1.0))
    if b_mean >= _ERF_AT_1_OVER_SQRT2:
        t = 1.0
    elif b_mean <= -_ERF_AT_1_OVER_SQRT2:
        t = -1.0
    else:
        t = max(-1.0, min(1.0, math.sqrt(2.0) * erf_inv(b_mean)))
    return sigma / math.sqrt(n) * t


def sign_bits_from_normalized(x: np.ndarray) -> np.ndarray:
    return (x >= 0).astype(np.int64)


def sign_estimate_from_data(data: np.ndarray, sigma: float) -> np.ndarray:
    """Run the sign protocol on explicit per-machine data of shape (m, n, d);
    returns the d-vector estimate."""
    m, n, d = data.shape
    x = data.sum(axis=1) / (sigma * math.sqrt(n))  # (m, d) normalized statistics
    out = np.empty(d)
    for ell in range(d):
        out[ell] = sign_decode(sign_bits_from_normalized(x[:, ell]), sigma, n)
    return out


def run_gme_dense(model: GaussianModel, alpha: float, rng: RngStream) -> RunReport:
    """Per-coordinate sign protocol on the first ceil(alpha m) machines;
    bits_used = d * ceil(alpha m) exactly."""
    if not 0.0 < alpha <= 1.0:
        raise ConfigurationError(f"alpha must be in (0, 1], got {alpha!r}")
    bound = model.scale
    if np.max(np.abs(model.theta)) > bound * (1 + 1e-12):
        raise ConfigurationError(
            f"|theta|_inf = {np.max(np.abs(model.theta)):.6g} exceeds sigma/sqrt(n) "
            f"= {bound:.6g}; use the general-range protocol instead"
        )
    m_used = math.ceil(alpha * model.m)
    tbar = model.theta_bar
    # The normalized per-machine statistic is exactly N(theta_bar, 1).
    x = rng.normal(0.0, 1.0, (model.d, m_used)) + tbar[:, None]
    estimate = np.empty(model.d)
    for ell in range(model.d):
        estimate[ell] = sign_decode(sign_bits_from_normalized(x[ell]), model.sigma, model.n)
    return RunReport(
        estimate,
        model.d * m_used,
        {"protocol": "sign", "alpha": alpha, "m_used": m_used},
    )


def run_gme_average(model: GaussianModel, rng: RngStream) -> RunReport:
    """Reference protocol: every machine broadcasts its per-coordinate sample
    means at full 64-bit precision. MSE is exactly sigma^2 d/(n m)."""
    means = rng.normal(0.0, model.sigma / math.sqrt(model.n), (model.m, model.d))
    means += model.theta[None, :]
    return RunReport(
        means.mean(axis=0),
        64 * model.m * model.d,
        {"protocol": "average"},
    )


def average_estimate_from_data(data: np.ndarray, sigma: float) -> np.ndarray:
    """Averaging protocol on explicit (m, n, d) data."""
    return data.mean(axis=(0, 1))


def sign_bit_mean_prediction(theta_bar: float) -> float:
    """E[B_i] under the +/-1 convention: erf(theta_bar / sqrt(2))."""
    return erf(theta_bar / math.sqrt(2.0))
