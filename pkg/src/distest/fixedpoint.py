"""Sign-magnitude fixed-point codes for reals in [-U, U].

Wire format: 1 sign bit followed by precision_bits magnitude bits (uniform
quantization with step U/(2^p - 1), round to nearest). Out-of-range inputs
clamp, so +/-U round-trip exactly and the decode error is at most
U * 2^(1-precision_bits) for in-range inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class FixedPointCode:
    bits: str
    range_bound: float
    precision_bits: int

    def __post_init__(self) -> None:
        if len(self.bits) != self.precision_bits + 1:
            raise DomainError(
                f"code must be {self.precision_bits + 1} bits, got {len(self.bits)}"
            )
        if set(self.bits) - {"0", "1"}:
            raise DomainError("code bits must be '0'/'1'")

    def __len__(self) -> int:
        return len(self.bits)


def encode_fixed_point(x: float, range_bound: float, precision_bits: int) -> FixedPointCode:
    if range_bound <= 0:
        raise DomainError(f"range_bound must be positive, got {range_bound!r}")
    if precision_bits < 1:
        raise DomainError(f"precision_bits must be >= 1, got {precision_bits!r}")
    levels = (1 << precision_bits) - 1
    scale = range_bound / levels
    clamped = min(max(x, -range_bound), range_bound)
    q = int(round(clamped / scale))
    q = min(max(q, -levels), levels)
    sign = "1" if q < 0 else "0"
    return FixedPointCode(sign + format(abs(q), f"0{precision_bits}b"),
                          range_bound, precision_bits)


def decode_fixed_point(code: FixedPointCode) -> float:
    levels = (1 << code.precision_bits) - 1
    magnitude = int(code.bits[1:], 2)
    value = magnitude * code.range_bound / levels
    return -value if code.bits[0] == "1" else value
