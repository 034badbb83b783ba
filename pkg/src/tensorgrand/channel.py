"""BPSK over a real AWGN channel and the matching bit LLRs.

LLR sign convention everywhere in the package: positive favours bit 0.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr


class PointKind(str, enum.Enum):
    SNR = "snr"  # Es/N0 per BPSK symbol
    EBN0 = "ebn0"


@dataclass(frozen=True)
class ChannelParams:
    sigma: float
    rate: float
    point_db: float
    point_kind: PointKind

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if not 0 < self.rate <= 1:
            raise ValueError("rate must lie in (0, 1]")

    @classmethod
    def at(cls, point_db: float, point_kind, rate: float) -> "ChannelParams":
        kind = PointKind(point_kind)
        return cls(ebn0_to_sigma(point_db, kind, rate), rate, float(point_db), kind)


def modulate(bits) -> np.ndarray:
    """Map bit 0 to +1.0 and bit 1 to -1.0."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def ebn0_to_sigma(point_db: float, point_kind, rate: float) -> float:
    """Noise standard deviation per real dimension for unit-energy BPSK.

    For ``ebn0`` the operating point is Eb/N0 and the code rate enters,
    ``sigma^2 = 1 / (2 R 10^(dB/10))``. For ``snr`` it is Es/N0 and the rate
    is ignored.
    """
    if not rate > 0:
        raise ValueError("rate must be positive")
    kind = PointKind(point_kind)
    lin = 10.0 ** (point_db / 10.0)
    if kind is PointKind.EBN0:
        lin *= rate
    return math.sqrt(1.0 / (2.0 * lin))


def awgn(symbols, sigma: float, rng: np.random.Generator) -> np.ndarray:
    symbols = np.asarray(symbols, dtype=np.float64)
    return symbols + sigma * rng.standard_normal(symbols.shape)


def channel_llr(observations, sigma: float) -> np.ndarray:
    return 2.0 * np.asarray(observations, dtype=np.float64) / sigma**2


def hard_decision(llr) -> np.ndarray:
    """Bit 1 where the LLR is negative; LLR 0 resolves to bit 0."""
    return (np.asarray(llr) < 0).astype(np.uint8)


def raw_ber(sigma: float) -> float:
    """Uncoded BPSK bit error probability Q(1/sigma)."""
    return float(ndtr(-1.0 / sigma))
