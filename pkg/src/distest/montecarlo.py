"""Deterministic Monte Carlo: per-trial streams derived from a master seed,
aggregation in trial order, unbiased sample MSE with standard error."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .errors import ConfigurationError, DistestError
from .gme import GaussianModel, run_gme_dense
from .reports import RunReport, TradeoffCurve, TradeoffRow
from .rng import RngStream

Runner = Callable[[GaussianModel, RngStream], RunReport]


@dataclass(frozen=True)
class MseResult:
    mse: float
    stderr: float
    bits: int
    trials: int


def mse_monte_carlo(
    runner: Runner, model: GaussianModel, trials: int, seed: int
) -> MseResult:
    """Sample mean of ||estimate - theta||^2 over per-trial streams
    (stream_id = trial index), with stderr = sample std / sqrt(trials)."""
    if trials < 30:
        raise ConfigurationError(f"trials must be >= 30, got {trials!r}")
    master = RngStream(seed)
    losses = np.empty(trials)
    bits = -1
    for t in range(trials):
        try:
            report = runner(model, master.substream(t))
        except DistestError as exc:
            raise type(exc)(f"trial {t}: {exc}") from exc
        diff = report.estimate - model.theta
        losses[t] = float(diff @ diff)
        if bits == -1:
            bits = report.bits_used
        elif report.bits_used != bits:
            raise ConfigurationError(
                f"trial {t}: bit count changed from {bits} to {report.bits_used}"
            )
    mse = float(losses.mean())
    stderr = float(losses.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return MseResult(mse, stderr, bits, trials)


def tradeoff_sweep(
    model: GaussianModel,
    alphas: Sequence[float],
    trials: int,
    seed: int,
    config: dict[str, Any] | None = None,
) -> TradeoffCurve:
    """One sign-protocol MSE row per alpha; each alpha gets its own stream
    family so rows are independent and individually reproducible."""
    if trials < 30:
        raise ConfigurationError(f"trials must be >= 30, got {trials!r}")
    for alpha in alphas:
        if not 0.0 < alpha <= 1.0:
            raise ConfigurationError(f"alpha must be in (0, 1], got {alpha!r}")
    master = RngStream(seed)
    rows = []
    for idx, alpha in enumerate(alphas):
        family = master.substream(idx)
        losses = np.empty(trials)
        bits = -1
        for t in range(trials):
            report = run_gme_dense(model, alpha, family.substream(t))
            diff = report.estimate - model.theta
            losses[t] = float(diff @ diff)
            bits = report.bits_used
        rows.append(
            TradeoffRow(
                alpha=float(alpha),
                bits_total=bits,
                mse_estimate=float(losses.mean()),
                mse_stderr=float(losses.std(ddof=1) / math.sqrt(trials)),
                trials=trials,
            )
        )
    echo = dict(config or {})
    echo.setdefault("seed", seed)
    echo.setdefault("trials", trials)
    echo.setdefault("alphas", [float(a) for a in alphas])
    return TradeoffCurve(rows, echo)
