"""Tensor-product codes built from one common systematic component code.

A codeword is an ``(n,) * l`` array in which every axis-aligned 1-D slice is
a component codeword. Information bits sit at indices whose coordinates are
all ``< k``.

Naming for l = 3, with entries indexed ``(a, b, c)``: a *row* varies ``b``
(axis 1), a *column* varies ``a`` (axis 0) and a *tube* varies ``c``
(axis 2).
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .component_code import ComponentCode

# rows, then columns, then tubes
AXIS_ORDER = {1: (0,), 2: (1, 0), 3: (1, 0, 2)}


@dataclass(frozen=True)
class TensorCode:
    component: ComponentCode
    l: int

    def __post_init__(self):
        if self.l not in AXIS_ORDER:
            raise ValueError(f"l must be 1, 2 or 3, got {self.l}")

    @property
    def n(self) -> int:
        return self.component.n

    @property
    def k(self) -> int:
        return self.component.k

    @property
    def N(self) -> int:
        return self.n**self.l

    @property
    def K(self) -> int:
        return self.k**self.l

    @property
    def rate(self) -> float:
        return self.K / self.N

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n,) * self.l

    @property
    def info_shape(self) -> tuple[int, ...]:
        return (self.k,) * self.l

    @property
    def axis_order(self) -> tuple[int, ...]:
        return AXIS_ORDER[self.l]

    def __str__(self):
        return f"[{self.N},{self.K}] {self.component.label}^{self.l}"


def encode_along(G: np.ndarray, arr: np.ndarray, axis: int) -> np.ndarray:
    """Encode every 1-D slice of ``arr`` along ``axis`` with generator ``G``."""
    moved = np.moveaxis(arr, axis, -1).astype(np.int64)
    out = (moved @ G) % 2
    return np.moveaxis(out, -1, axis).astype(np.uint8)


def encode_tensor(code: TensorCode, info) -> np.ndarray:
    """Encode a ``(k,) * l`` info array, axis by axis in row, column, tube order.

    For l = 3 this is k^2 row encodes, then k*n column encodes, then n^2
    tube encodes.
    """
    arr = np.asarray(info, dtype=np.uint8)
    if arr.shape != code.info_shape:
        raise ValueError(f"info shape {arr.shape} != {code.info_shape}")
    G = code.component.generator
    for axis in code.axis_order:
        arr = encode_along(G, arr, axis)
    return arr


def extract_info(code: TensorCode, hard) -> np.ndarray:
    hard = np.asarray(hard)
    if hard.shape != code.shape:
        raise ValueError(f"tensor shape {hard.shape} != {code.shape}")
    return hard[(slice(0, code.k),) * code.l].copy()


def slices(tensor: np.ndarray, axis: int) -> Iterator[tuple[tuple[int, ...], np.ndarray]]:
    """Yield ``(index, view)`` for each 1-D slice along ``axis``.

    ``index`` holds the fixed coordinates of the other axes. Views share
    memory with ``tensor``.
    """
    if not 0 <= axis < tensor.ndim:
        raise ValueError(f"axis {axis} out of range for {tensor.ndim}-D tensor")
    other = [d for i, d in enumerate(tensor.shape) if i != axis]
    for idx in np.ndindex(*other):
        key = list(idx)
        key.insert(axis, slice(None))
        yield idx, tensor[tuple(key)]


def slice_stack(tensor: np.ndarray, axis: int) -> np.ndarray:
    """All slices along ``axis`` as rows of a 2-D copy."""
    return np.moveaxis(tensor, axis, -1).reshape(-1, tensor.shape[axis])


def unstack(stack: np.ndarray, shape: tuple[int, ...], axis: int) -> np.ndarray:
    """Inverse of :func:`slice_stack`."""
    moved = [d for i, d in enumerate(shape) if i != axis] + [shape[axis]]
    return np.moveaxis(stack.reshape(moved), -1, axis)


def mult_count(l: int, n: int, k: int) -> int:
    """Binary multiplications needed to encode a tensor code systematically."""
    per = k * (n - k)
    if l == 1:
        return per
    if l == 2:
        return (k + n) * per
    if l == 3:
        return (k * k + k * n + n * n) * per
    raise ValueError(f"unsupported dimension l = {l}")


def design_space(max_redundancy: int = 25, max_n: int = 464, dims=(1, 2, 3)) -> list[dict]:
    """Every (l, n, k) with n <= max_n and 1 <= n - k <= max_redundancy.

    Rates are exact fractions so that rate comparisons are not at the mercy
    of rounding.
    """
    rows = []
    for n in range(2, max_n + 1):
        for k in range(max(1, n - max_redundancy), n):
            r = Fraction(k, n)
            for l in dims:
                rows.append({"l": l, "n": n, "k": k, "length": n**l, "rate": r**l})
    return rows


def max_length_at_rate(table: list[dict], l: int, rate: float, tol: float = 0.005) -> int:
    """Longest code of dimension ``l`` whose rate is within ``tol`` of ``rate``."""
    best = max((row["length"] for row in table
                if row["l"] == l and abs(float(row["rate"]) - rate) < tol), default=0)
    return best


def design_space_csv(table: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["l", "n", "k", "length", "rate"])
    for row in table:
        writer.writerow([row["l"], row["n"], row["k"], row["length"], f"{float(row['rate']):.6f}"])
    return buf.getvalue()
