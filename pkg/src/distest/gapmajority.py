"""k-party gap majority: decide whether sum(z) <= k/2 - sqrt(k) or
>= k/2 + sqrt(k), with z_i i.i.d. B_{1/2 +/- 10/sqrt(k)} by the hidden bit.

The broadcast protocol reveals every input (k bits), so its information cost
conditioned on the hidden bit is exactly k times the per-input entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import binary_entropy_nats
from .errors import DomainError
from .rng import RngStream

# 1/2 + 10/sqrt(k) must be a probability.
MIN_PARTIES = 400


@dataclass(frozen=True)
class GapMajorityInstance:
    k: int
    hidden_bit: int
    z: np.ndarray

    def __post_init__(self) -> None:
        if self.z.size != self.k:
            raise DomainError("z must have one bit per party")


def gap_majority_bias(k: int) -> float:
    return 10.0 / math.sqrt(k)


def gap_majority_make(k: int, hidden_bit: int, rng: RngStream) -> GapMajorityInstance:
    if k < MIN_PARTIES:
        raise DomainError(
            f"k must be >= {MIN_PARTIES} so 1/2 + 10/sqrt(k) is a probability"
        )
    if hidden_bit not in (0, 1):
        raise DomainError("hidden_bit must be 0 or 1")
    eps = gap_majority_bias(k)
    p = 0.5 + eps if hidden_bit else 0.5 - eps
    z = (rng.random(k) < p).astype(np.int64)
    return GapMajorityInstance(k, hidden_bit, z)


def gap_majority_broadcast(inst: GapMajorityInstance) -> tuple[int, int, float]:
    """(decision bit, bits_used, analytic information cost in nats).

    Every party broadcasts its bit; decision = [sum z >= k/2]. The transcript
    determines the inputs, so I(Pi; Z | B=0) = H(Z | B=0) = k H(B_{1/2 - eps}).
    """
    total = int(inst.z.sum())
    decision = int(total >= inst.k / 2.0)
    eps = gap_majority_bias(inst.k)
    info_cost = inst.k * binary_entropy_nats(0.5 - eps)
    return decision, inst.k, info_cost
