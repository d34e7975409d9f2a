"""Finite distributions and exact divergence / information computations.

All divergences are in nats; 0*log(0) = 0 by convention, and q = 0 where
p > 0 raises AbsoluteContinuityError rather than returning +inf.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import AbsoluteContinuityError, DomainError, SupportMismatchError

PROB_SUM_TOL = 1e-12
# Cells where both densities are below this floor are dropped from the
# domination ratio (tail underflow is harmless at 20-sigma truncation).
DENSITY_FLOOR = 1e-300


@dataclass(frozen=True)
class DiscreteDistribution:
    """Probability vector over a finite labeled support.

    positions, when present, are real grid coordinates of the support points
    (required by the 1-D Wasserstein/transportation machinery).
    """

    support: tuple[Any, ...]
    probs: np.ndarray
    positions: np.ndarray | None = None

    def __post_init__(self) -> None:
        probs = np.ascontiguousarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "probs", probs)
        if len(self.support) != probs.size:
            raise DomainError("support and probs length mismatch")
        if len(set(self.support)) != len(self.support):
            raise DomainError("support labels must be distinct")
        if np.any(probs < 0):
            raise DomainError("probabilities must be nonnegative")
        total = float(probs.sum())
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise DomainError(f"probabilities sum to {total!r}, not 1")
        if self.positions is not None:
            pos = np.ascontiguousarray(self.positions, dtype=np.float64)
            if pos.size != probs.size:
                raise DomainError("positions and probs length mismatch")
            object.__setattr__(self, "positions", pos)

    @property
    def size(self) -> int:
        return self.probs.size

    def same_support(self, other: "DiscreteDistribution") -> bool:
        return self.support == other.support

    def to_json_obj(self) -> dict[str, Any]:
        obj: dict[str, Any] = {
            "support": list(self.support),
            "probs": [float(p) for p in self.probs],
        }
        if self.positions is not None:
            obj["positions"] = [float(x) for x in self.positions]
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict[str, Any]) -> "DiscreteDistribution":
        positions = obj.get("positions")
        return cls(
            tuple(obj["support"]),
            np.asarray(obj["probs"], dtype=np.float64),
            None if positions is None else np.asarray(positions, dtype=np.float64),
        )

    @classmethod
    def from_json(cls, text: str) -> "DiscreteDistribution":
        return cls.from_json_obj(json.loads(text))

    @classmethod
    def from_weights(
        cls,
        support: Sequence[Any],
        weights: Sequence[float],
        positions: Sequence[float] | None = None,
    ) -> "DiscreteDistribution":
        w = np.asarray(weights, dtype=np.float64)
        if np.any(w < 0) or w.sum() <= 0:
            raise DomainError("weights must be nonnegative with positive sum")
        return cls(
            tuple(support),
            w / w.sum(),
            None if positions is None else np.asarray(positions, dtype=np.float64),
        )


def bernoulli(p: float) -> DiscreteDistribution:
    """B_p on support (0, 1)."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"Bernoulli parameter must be in [0, 1], got {p!r}")
    return DiscreteDistribution((0, 1), np.array([1.0 - p, p]))


@dataclass(frozen=True)
class ChannelPair:
    """The binary-input channel V -> X given by (mu0, mu1) on a shared support."""

    mu0: DiscreteDistribution
    mu1: DiscreteDistribution
    domination_ratio: float = field(init=False)

    def __post_init__(self) -> None:
        if not self.mu0.same_support(self.mu1):
            raise SupportMismatchError("mu0 and mu1 must share a support")
        object.__setattr__(self, "domination_ratio", self._domination())

    def _domination(self) -> float:
        """Smallest c with mu1 <= c * mu0 pointwise; +inf if none."""
        p0 = self.mu0.probs
        p1 = self.mu1.probs
        keep = ~((p0 < DENSITY_FLOOR) & (p1 < DENSITY_FLOOR))
        p0 = p0[keep]
        p1 = p1[keep]
        if np.any((p0 == 0) & (p1 > 0)):
            return math.inf
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(p1 > 0, p1 / np.maximum(p0, DENSITY_FLOOR), 0.0)
        return float(max(ratio.max(initial=0.0), 1.0))

    @property
    def positions(self) -> np.ndarray | None:
        return self.mu0.positions

    @property
    def mean(self) -> DiscreteDistribution:
        """The equal mixture (mu0 + mu1) / 2."""
        return DiscreteDistribution(
            self.mu0.support,
            0.5 * (self.mu0.probs + self.mu1.probs),
            self.mu0.positions,
        )

    def is_degenerate(self, tol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self.mu0.probs - self.mu1.probs)) <= tol)


@dataclass(frozen=True)
class JointDistribution:
    """Joint law over row_support x col_support; entries sum to 1."""

    row_support: tuple[Any, ...]
    col_support: tuple[Any, ...]
    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.ascontiguousarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "probs", probs)
        if probs.shape != (len(self.row_support), len(self.col_support)):
            raise DomainError("probs shape does not match supports")
        if np.any(probs < 0):
            raise DomainError("joint probabilities must be nonnegative")
        total = float(probs.sum())
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise DomainError(f"joint probabilities sum to {total!r}, not 1")

    def row_marginal(self) -> np.ndarray:
        return self.probs.sum(axis=1)

    def col_marginal(self) -> np.ndarray:
        return self.probs.sum(axis=0)


def _check_pair(p: DiscreteDistribution, q: DiscreteDistribution) -> None:
    if not p.same_support(q):
        raise SupportMismatchError("distributions are on different supports")


def kl_divergence(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """D_kl(p || q) in nats."""
    _check_pair(p, q)
    pa, qa = p.probs, q.probs
    if np.any((qa == 0) & (pa > 0)):
        raise AbsoluteContinuityError("p is not absolutely continuous w.r.t. q")
    mask = pa > 0
    return float(np.sum(pa[mask] * np.log(pa[mask] / qa[mask])))


def chi_squared(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """chi^2(p || q) = sum (p-q)^2 / q; upper-bounds the KL divergence."""
    _check_pair(p, q)
    pa, qa = p.probs, q.probs
    if np.any((qa == 0) & (pa > 0)):
        raise AbsoluteContinuityError("p is not absolutely continuous w.r.t. q")
    mask = qa > 0
    return float(np.sum((pa[mask] - qa[mask]) ** 2 / qa[mask]))


def total_variation(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    _check_pair(p, q)
    return float(0.5 * np.abs(p.probs - q.probs).sum())


def hellinger_sq(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """h^2(p, q) = (1/2) sum (sqrt(p) - sqrt(q))^2, in [0, 1]."""
    _check_pair(p, q)
    return hellinger_sq_arrays(p.probs, q.probs)


def hellinger_sq_arrays(pa: np.ndarray, qa: np.ndarray) -> float:
    d = np.sqrt(pa) - np.sqrt(qa)
    return float(0.5 * np.dot(d, d))


def mutual_information(j: JointDistribution) -> float:
    """I(row; col) in nats, exactly from the joint table."""
    return mutual_information_arrays(j.probs)


def mutual_information_arrays(probs: np.ndarray) -> float:
    pr = probs.sum(axis=1)
    pc = probs.sum(axis=0)
    outer = np.outer(pr, pc)
    mask = probs > 0
    return float(np.sum(probs[mask] * np.log(probs[mask] / outer[mask])))


def binary_entropy_nats(p: float) -> float:
    """Entropy of B_p in nats; H(B_0) = H(B_1) = 0."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"Bernoulli parameter must be in [0, 1], got {p!r}")
    h = 0.0
    if p > 0:
        h -= p * math.log(p)
    if p < 1:
        h -= (1 - p) * math.log(1 - p)
    return h
