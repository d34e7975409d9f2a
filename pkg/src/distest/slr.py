"""Data reduction from Gaussian mean estimation to linear regression.

Given a machine's mean-estimation input X ~ N(theta, sigma0^2 I_d) and a
fixed design A (n x d), the machine fabricates observations

    y = A X + b,   b ~ N(0, sigma^2 I_n - sigma0^2 A A^T),

so that marginally y = A theta + xi with xi ~ N(0, sigma^2 I_n). The noise
covariance must be PSD, which holds exactly when sigma0 <= sigma / ||A||.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NotPositiveSemidefiniteError
from .rng import RngStream

PSD_TOLERANCE = 1e-10


def spectral_lambda(design: np.ndarray, n: int) -> float:
    """lambda = ||A|| / sqrt(n), the normalized spectral norm."""
    return float(np.linalg.norm(design, 2)) / math.sqrt(n)


def sigma0_for_design(design: np.ndarray, sigma: float, n: int) -> float:
    """The reduction's source std: sigma0 = sigma / (lambda sqrt(n))."""
    lam = spectral_lambda(design, n)
    if lam <= 0:
        raise DomainError("design must be nonzero to size sigma0")
    return sigma / (lam * math.sqrt(n))


def slr_reduce(
    x_vec: np.ndarray,
    design: np.ndarray,
    sigma: float,
    sigma0: float,
    rng: RngStream,
) -> np.ndarray:
    """Fabricate the regression observations y = A x + b for one machine.

    Raises NotPositiveSemidefiniteError when sigma^2 I - sigma0^2 A A^T has an
    eigenvalue below -PSD_TOLERANCE * sigma^2 (the spectral-norm assumption on
    the design is violated).
    """
    x_vec = np.asarray(x_vec, dtype=np.float64)
    design = np.asarray(design, dtype=np.float64)
    if design.ndim != 2 or x_vec.ndim != 1 or design.shape[1] != x_vec.size:
        raise DomainError(
            f"shape mismatch: design {design.shape}, x {x_vec.shape}"
        )
    if not sigma > 0 or sigma0 < 0:
        raise DomainError("need sigma > 0 and sigma0 >= 0")
    n = design.shape[0]
    cov = sigma**2 * np.eye(n) - sigma0**2 * (design @ design.T)
    # eigh doubles as the PSD check and the sampling factor; the boundary
    # case sigma0 = sigma/||A|| is singular but valid.
    eigvals, eigvecs = np.linalg.eigh(cov)
    if eigvals.min() < -PSD_TOLERANCE * sigma**2:
        raise NotPositiveSemidefiniteError(
            f"min eigenvalue {eigvals.min():.3e} of the fabricated-noise "
            "covariance is negative; the design violates the spectral bound"
        )
    root = eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))[None, :]
    b = root @ rng.normal(0.0, 1.0, n)
    return design @ x_vec + b
