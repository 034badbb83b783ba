"""Iterative SISO decoding of square and cubic tensor codes.

One *half-iteration* is a SISO pass over every slice of one axis (all rows,
all columns or all tubes). Passes cycle row -> column (-> tube). After each
pass the hard decision of the APP LLRs is tested against every slice of
every axis; the a-priori input of the next pass is ``alpha`` times the
extrinsic output of the pass just finished.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .channel import hard_decision
from .orbgrand import default_max_queries
from .tensor import TensorCode, extract_info, slice_stack, unstack

DEFAULT_ALPHA = {1: 0.5, 2: 0.5, 3: 0.7}
DEFAULT_THRES = {1: 0.5, 2: 20.0, 3: 30.0}


class Status(str, enum.Enum):
    CONVERGED = "converged"
    ABANDONED = "abandoned"


@dataclass(frozen=True)
class DecoderConfig:
    """``thres`` is in iterations; a half-iteration counts 0.5."""

    alpha: float = 0.7
    thres: float = 30.0
    list_size: int = 4
    max_queries: int | None = None
    early_stop: float = 1e-5
    one_line: bool = False

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.thres > 0:
            raise ValueError("thres must be positive")
        if self.list_size < 1:
            raise ValueError("list_size must be at least 1")
        if self.max_queries is not None and self.max_queries < 1:
            raise ValueError("max_queries must be at least 1")
        if self.early_stop < 0:
            raise ValueError("early_stop must be nonnegative")

    @classmethod
    def for_dims(cls, l: int, **overrides) -> "DecoderConfig":
        """Defaults tuned per dimension: alpha 0.5 / thres 20 square, 0.7 / 30 cubic."""
        params = {"alpha": DEFAULT_ALPHA[l], "thres": DEFAULT_THRES[l]}
        params.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**params)


@dataclass
class DecodeOutcome:
    hard: np.ndarray
    status: Status
    half_iterations: float
    info_bits: np.ndarray

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def validity_check(code: TensorCode, hard) -> bool:
    """True iff every slice along every axis is a component codeword."""
    hard = np.asarray(hard)
    if hard.shape != code.shape:
        raise ValueError(f"tensor shape {hard.shape} != {code.shape}")
    H = code.component.parity_check.astype(np.int64)
    for axis in range(code.l):
        if np.any((slice_stack(hard, axis).astype(np.int64) @ H.T) % 2):
            return False
    return True


def turbo_decode(code: TensorCode, l_ch, cfg: DecoderConfig) -> DecodeOutcome:
    l_ch = np.asarray(l_ch, dtype=np.float64)
    if l_ch.shape != code.shape:
        raise ValueError(f"LLR shape {l_ch.shape} != {code.shape}")
    comp = code.component
    max_queries = cfg.max_queries or default_max_queries(comp)
    l_a = np.zeros_like(l_ch)
    half = 0.0
    while True:
        for axis in code.axis_order:
            stack = slice_stack(l_ch + l_a, axis)
            app, ext, _, _, _ = _kernels.decode_slices(
                comp, stack, cfg.list_size, max_queries, cfg.early_stop, cfg.one_line)
            half += 0.5
            hard = hard_decision(unstack(app, code.shape, axis))
            if validity_check(code, hard):
                return DecodeOutcome(hard, Status.CONVERGED, half, extract_info(code, hard))
            if half >= cfg.thres:
                return DecodeOutcome(hard, Status.ABANDONED, half, extract_info(code, hard))
            l_a = cfg.alpha * unstack(ext, code.shape, axis)
