"""Ordered reliability bits GRAND (basic logistic-weight schedule).

Positions are ranked 1..n by ascending |LLR|. A noise pattern is a set of
ranks; its logistic weight is the sum of those ranks. Patterns are queried
in nondecreasing logistic weight, fewest flips first within a weight, then
lexicographically. This schedule does not depend on the LLR values, so the
queried sets for a given ``n`` can be tabulated once (see
:func:`pattern_table`).

The functions here are reference implementations, written for clarity. The
turbo decoder runs the equivalent compiled kernel in ``_kernels``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np
from scipy.special import expit

from .channel import hard_decision
from .component_code import ComponentCode, syndrome_ok


@dataclass(frozen=True)
class ReliabilityOrder:
    perm: np.ndarray  # perm[r] = position with rank r + 1
    abs_llr: np.ndarray
    flip_prob: np.ndarray

    @property
    def n(self) -> int:
        return int(self.perm.size)


@dataclass(frozen=True)
class ErrorPattern:
    ranks: tuple[int, ...]

    @property
    def logistic_weight(self) -> int:
        return sum(self.ranks)


@dataclass
class GrandList:
    entries: list[tuple[np.ndarray, float]] = field(default_factory=list)
    coverage: float = 0.0
    queries: int = 0


def flip_probability(abs_llr) -> np.ndarray:
    """Probability that a bit with reliability |L| was flipped, 1 / (1 + e^|L|)."""
    return expit(-np.asarray(abs_llr, dtype=np.float64))


def rank_positions(llr_in) -> ReliabilityOrder:
    llr = np.asarray(llr_in, dtype=np.float64)
    if np.isnan(llr).any():
        raise ValueError("LLR vector contains NaN")
    mag = np.abs(llr)
    perm = np.argsort(mag, kind="stable")
    abs_sorted = mag[perm]
    return ReliabilityOrder(perm, abs_sorted, flip_probability(abs_sorted))


def _distinct_parts(w: int, m: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    """Increasing m-tuples from [lo, hi] summing to w, in lexicographic order."""
    if m == 1:
        if lo <= w <= hi:
            yield (w,)
        return
    for a in range(lo, hi + 1):
        rest = w - a
        if rest < (m - 1) * (a + 1) + (m - 1) * (m - 2) // 2:
            break
        if rest > (m - 1) * hi - (m - 1) * (m - 2) // 2:
            continue
        for tail in _distinct_parts(rest, m - 1, a + 1, hi):
            yield (a,) + tail


def iter_rank_sets(n: int, offset: int = 0) -> Iterator[tuple[int, ...]]:
    """Every subset of {1..n} exactly once, in ORBGRAND query order.

    With ``offset > 0`` each flipped rank ``r`` costs ``r + offset`` (the
    intercept of the one-line reliability model); ``offset = 0`` is basic
    ORBGRAND.
    """
    yield ()
    for w in range(1, n * (n + 1) // 2 + n * offset + 1):
        m = 1
        while m <= n and m * (m + 1) // 2 + m * offset <= w:
            yield from _distinct_parts(w - m * offset, m, 1, n)
            m += 1


def next_pattern(n: int, offset: int = 0) -> Iterator[ErrorPattern]:
    """Iterator over error patterns; ``StopIteration`` marks exhaustion."""
    return (ErrorPattern(r) for r in iter_rank_sets(n, offset))


def line_offset(abs_sorted) -> int:
    """Intercept of a least-squares line through the sorted reliabilities, in rank units.

    Models ``|L|_(i) ~ beta (i + offset)``; returns 0 for nonpositive slopes
    or intercepts and never more than n.
    """
    a = np.asarray(abs_sorted, dtype=np.float64)
    n = a.size
    i = np.arange(1, n + 1, dtype=np.float64)
    di = i - i.mean()
    beta = (di * (a - a.mean())).sum() / (di * di).sum()
    if beta <= 0:
        return 0
    off = (a.mean() - beta * i.mean()) / beta
    return int(min(max(round(off), 0), n))


@lru_cache(maxsize=64)
def pattern_table(n: int, count: int, offset: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """First ``count`` patterns of the schedule in CSR form with 0-based ranks.

    Pattern ``q`` flips ranks ``ranks[ptr[q]:ptr[q + 1]]``.
    """
    count = min(count, 2**n)
    ptr = np.zeros(count + 1, dtype=np.int64)
    flat: list[int] = []
    for q, rs in enumerate(iter_rank_sets(n, offset)):
        if q == count:
            break
        flat.extend(r - 1 for r in rs)
        ptr[q + 1] = len(flat)
    ranks = np.asarray(flat, dtype=np.int64)
    ptr.setflags(write=False)
    ranks.setflags(write=False)
    return ptr, ranks


@lru_cache(maxsize=16)
def stacked_tables(n: int, count: int, one_line: bool) -> tuple[np.ndarray, np.ndarray]:
    """Pattern tables for every offset 0..n (only offset 0 unless ``one_line``).

    Returns ``ptr`` of shape (tables, count + 1) indexing one shared ``ranks``.
    """
    offsets = range(n + 1) if one_line else range(1)
    ptrs, chunks, base = [], [], 0
    for off in offsets:
        ptr, ranks = pattern_table(n, count, off)
        ptrs.append(ptr + base)
        chunks.append(ranks)
        base += ranks.size
    ptr = np.vstack(ptrs)
    ranks = np.concatenate(chunks)
    ptr.setflags(write=False)
    ranks.setflags(write=False)
    return ptr, ranks


def pattern_probability(pattern: ErrorPattern, order: ReliabilityOrder) -> float:
    p = order.flip_prob
    flipped = np.zeros(p.size, dtype=bool)
    flipped[[r - 1 for r in pattern.ranks]] = True
    return float(np.prod(np.where(flipped, p, 1.0 - p)))


def unexplored_codeword_mass(coverage: float, found: int, queries: int, n: int, k: int) -> float:
    """Probability mass of codeword-producing patterns not yet queried.

    The unqueried patterns are assumed to hit codewords at the code's
    density: ``(1 - coverage) (2^k - found) / (2^n - queries)``.
    """
    remaining = 2.0**n - queries
    if remaining <= 0:
        return 0.0
    mass = (1.0 - coverage) * (2.0**k - found) / remaining
    return min(max(mass, 0.0), 1.0)


def default_max_queries(code: ComponentCode) -> int:
    return 2 ** min(code.redundancy + 4, 16)


def grand_list_decode(
    code: ComponentCode,
    llr_in,
    L: int = 4,
    max_queries: int | None = None,
    stop_prob: float = 0.0,
    one_line: bool = False,
) -> GrandList:
    """Collect up to ``L`` codewords by querying noise patterns in ORBGRAND order.

    Querying stops once the list is full, the budget is spent, or (with at
    least one entry) the estimated probability that the transmitted codeword
    is outside the list drops below ``stop_prob``. ``one_line`` shifts the
    schedule by the fitted intercept of :func:`line_offset`.
    """
    llr = np.asarray(llr_in, dtype=np.float64)
    if llr.size != code.n:
        raise ValueError(f"LLR length {llr.size} != n = {code.n}")
    if L < 1:
        raise ValueError("list size must be at least 1")
    if max_queries is None:
        max_queries = default_max_queries(code)
    if max_queries < 1:
        raise ValueError("max_queries must be at least 1")

    order = rank_positions(llr)
    hard = hard_decision(llr)
    offset = line_offset(order.abs_llr) if one_line else 0
    out = GrandList()
    found_mass = 0.0
    for pattern in next_pattern(code.n, offset):
        if out.queries >= max_queries:
            break
        word = hard.copy()
        for r in pattern.ranks:
            word[order.perm[r - 1]] ^= 1
        w = pattern_probability(pattern, order)
        out.queries += 1
        out.coverage = min(out.coverage + w, 1.0)
        if syndrome_ok(code, word):
            out.entries.append((word, w))
            found_mass += w
            if len(out.entries) >= L:
                break
        if out.entries and stop_prob > 0:
            mass = unexplored_codeword_mass(out.coverage, len(out.entries), out.queries, code.n, code.k)
            if mass / (found_mass + mass) < stop_prob:
                break
    return out
