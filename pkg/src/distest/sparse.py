"""Detection-to-estimation embedding for sparse means.

The machines publicly sample k coordinates without replacement, embed the
true 1-D detection samples at the first, fill the other k-1 with N(delta,
sigma^2) draws and the rest with N(0, sigma^2) draws, run a d-dimensional
mean estimator on the prepared data, and threshold the embedded coordinate
at delta/2. The prepared per-machine law is exactly a k-sparse Gaussian
mean instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .errors import ConfigurationError, DomainError
from .rng import RngStream

#: estimator(data, sigma) -> d-vector, with data of shape (m, n, d)
DataEstimator = Callable[[np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class SparseDetectionConfig:
    delta: float
    k: int
    d: int
    n: int
    m: int
    sigma: float = 1.0

    def __post_init__(self) -> None:
        if not self.delta > 0:
            raise DomainError(f"delta must be positive, got {self.delta!r}")
        if self.k < 1:
            raise DomainError("k must be >= 1")
        if self.d < 2 * self.k:
            raise DomainError(f"need d >= 2k, got d={self.d}, k={self.k}")
        if self.n < 1 or self.m < 1:
            raise DomainError("n and m must be >= 1")
        if not self.sigma > 0:
            raise DomainError("sigma must be positive")


def delta_for_target_risk(risk: float, k: int) -> float:
    """Separation sized so a base estimator with mean-squared loss `risk`
    distinguishes the embedded coordinate: delta = sqrt(16 risk / k)."""
    if not risk > 0 or k < 1:
        raise DomainError("risk must be positive and k >= 1")
    return math.sqrt(16.0 * risk / k)


def prepare_embedded_data(
    detector_samples: np.ndarray,
    cfg: SparseDetectionConfig,
    coords: np.ndarray,
    private_rng: RngStream,
) -> np.ndarray:
    """Per-machine (m, n, d) data with the detection samples embedded at
    coords[0], N(delta, sigma^2) fills at coords[1:], N(0, sigma^2) elsewhere."""
    detector_samples = np.asarray(detector_samples, dtype=np.float64)
    if detector_samples.shape != (cfg.m, cfg.n):
        raise DomainError(
            f"detector samples must be (m, n) = ({cfg.m}, {cfg.n}), "
            f"got {detector_samples.shape}"
        )
    if coords.size != cfg.k or len(set(coords.tolist())) != cfg.k:
        raise DomainError("coords must be k distinct indices")
    data = private_rng.normal(0.0, cfg.sigma, (cfg.m, cfg.n, cfg.d))
    for idx in coords[1:]:
        data[:, :, idx] += cfg.delta
    data[:, :, coords[0]] = detector_samples
    return data


def sparse_reduction_protocol1(
    detector_samples: np.ndarray,
    base_estimator: DataEstimator,
    cfg: SparseDetectionConfig,
    rng: RngStream,
) -> tuple[int, dict[str, Any]]:
    """Run the embedding reduction once; returns the decision bit and
    diagnostics. rng.substream(0) is the public coin (coordinate sampling),
    rng.substream(1) feeds the private fills."""
    public = rng.substream(0)
    private = rng.substream(1)
    coords = public.choice_without_replacement(cfg.d, cfg.k)
    data = prepare_embedded_data(detector_samples, cfg, coords, private)
    estimate = np.asarray(base_estimator(data, cfg.sigma))
    if estimate.shape != (cfg.d,):
        raise ConfigurationError(
            f"base estimator returned shape {estimate.shape}, expected ({cfg.d},)"
        )
    embedded = float(estimate[coords[0]])
    decision = int(abs(embedded) >= cfg.delta / 2.0)
    return decision, {
        "coords": coords.tolist(),
        "embedded_estimate": embedded,
        "threshold": cfg.delta / 2.0,
    }


def draw_detection_samples(
    v: int, cfg: SparseDetectionConfig, rng: RngStream
) -> np.ndarray:
    """(m, n) samples from mu_v = N(v delta, sigma^2)."""
    if v not in (0, 1):
        raise DomainError("v must be 0 or 1")
    return rng.normal(v * cfg.delta, cfg.sigma, (cfg.m, cfg.n))
