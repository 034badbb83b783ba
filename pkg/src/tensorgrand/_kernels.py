"""Compiled SOGRAND batch kernel used by the turbo decoder.

Mirrors ``orbgrand.grand_list_decode`` + ``sogrand.siso_decode`` exactly
(same query order, stopping rules and APP formula) but works on a whole
stack of component words at once and keeps pattern weights in the log
domain. Words are limited to n <= 62 so flip sets fit in an int64 mask.
"""
import math

import numpy as np
from numba import njit

LLR_MAX = 40.0
MAX_N = 62


@njit(cache=True)
def _unexplored_mass(coverage, found, queries, n, k):
    remaining = 2.0**n - queries
    if remaining <= 0.0:
        return 0.0
    mass = (1.0 - coverage) * (2.0**k - found) / remaining
    if mass < 0.0:
        return 0.0
    if mass > 1.0:
        return 1.0
    return mass


@njit(cache=True)
def _line_offset(a, idx, imean, ivar):
    n = a.size
    amean = a.mean()
    cov = 0.0
    for i in range(n):
        cov += (idx[i] - imean) * (a[i] - amean)
    beta = cov / ivar
    if beta <= 0.0:
        return 0
    off = round((amean - beta * imean) / beta)
    if off < 0:
        return 0
    if off > n:
        return n
    return int(off)


@njit(cache=True)
def siso_batch(llr, hcols, k, ptr, ranks, list_size, stop_prob, app, ext, best, p_notfound, list_bler):
    """Decode every row of ``llr`` (shape (m, n)); results written in place."""
    m, n = llr.shape
    n_tables = ptr.shape[0]
    n_patterns = ptr.shape[1] - 1
    idx = np.arange(1, n + 1).astype(np.float64)
    imean = idx.mean()
    ivar = ((idx - imean) ** 2).sum()
    x = np.empty(n)
    absx = np.empty(n)
    hard = np.empty(n, dtype=np.uint8)
    masks = np.empty(list_size, dtype=np.int64)
    logws = np.empty(list_size)
    for s in range(m):
        syn0 = 0
        log_c = 0.0
        for j in range(n):
            v = llr[s, j]
            if v > LLR_MAX:
                v = LLR_MAX
            elif v < -LLR_MAX:
                v = -LLR_MAX
            x[j] = v
            a = abs(v)
            absx[j] = a
            log_c -= math.log1p(math.exp(-a))
            if v < 0.0:
                hard[j] = 1
                syn0 ^= hcols[j]
            else:
                hard[j] = 0
        perm = np.argsort(absx, kind="mergesort")
        tab = 0
        if n_tables > 1:
            tab = _line_offset(absx[perm], idx, imean, ivar)

        coverage = 0.0
        found_mass = 0.0
        found = 0
        for q in range(n_patterns):
            syn = syn0
            mask = 0
            logw = log_c
            for t in range(ptr[tab, q], ptr[tab, q + 1]):
                pos = perm[ranks[t]]
                syn ^= hcols[pos]
                mask |= 1 << pos
                logw -= absx[pos]
            w = math.exp(logw)
            coverage += w
            if coverage > 1.0:
                coverage = 1.0
            if syn == 0:
                masks[found] = mask
                logws[found] = logw
                found += 1
                found_mass += w
                if found >= list_size:
                    queries = q + 1
                    break
            if found > 0 and stop_prob > 0.0:
                mass = _unexplored_mass(coverage, found, q + 1, n, k)
                if mass / (found_mass + mass) < stop_prob:
                    queries = q + 1
                    break
        else:
            queries = n_patterns

        if found == 0:
            for j in range(n):
                app[s, j] = x[j]
                ext[s, j] = 0.0
                best[s, j] = hard[j]
            p_notfound[s] = 1.0
            list_bler[s] = 1.0
            continue

        mass = _unexplored_mass(coverage, found, queries, n, k)
        top = 0
        for e in range(1, found):
            if logws[e] > logws[top]:
                top = e
        maxlog = logws[top]
        wsum = 0.0
        for e in range(found):
            logws[e] = math.exp(logws[e] - maxlog)
            wsum += logws[e]
        if mass > 0.0:
            mexp = math.log(mass) - maxlog
            mass = math.exp(min(mexp, 700.0))
        total = wsum + mass
        p_notfound[s] = mass / total
        list_bler[s] = 1.0 - 1.0 / total

        for j in range(n):
            num0 = 0.0
            num1 = 0.0
            for e in range(found):
                bit = hard[j] ^ ((masks[e] >> j) & 1)
                if bit == 0:
                    num0 += logws[e]
                else:
                    num1 += logws[e]
            if mass > 0.0:
                prior0 = 1.0 / (1.0 + math.exp(-x[j]))
                num0 += mass * prior0
                num1 += mass * (1.0 - prior0)
            if num1 <= 0.0:
                v = LLR_MAX
            elif num0 <= 0.0:
                v = -LLR_MAX
            else:
                v = math.log(num0) - math.log(num1)
                if v > LLR_MAX:
                    v = LLR_MAX
                elif v < -LLR_MAX:
                    v = -LLR_MAX
            app[s, j] = v
            ext[s, j] = v - x[j]
            best[s, j] = hard[j] ^ ((masks[top] >> j) & 1)


def decode_slices(code, llr2d, list_size, max_queries, stop_prob, one_line=False):
    """Run the kernel over an (m, n) stack; returns (app, ext, best, p_notfound, list_bler)."""
    from .orbgrand import stacked_tables

    if code.n > MAX_N:
        raise ValueError(f"compiled kernel supports n <= {MAX_N}")
    llr2d = np.ascontiguousarray(llr2d, dtype=np.float64)
    m = llr2d.shape[0]
    ptr, ranks = stacked_tables(code.n, int(max_queries), bool(one_line))
    app = np.empty_like(llr2d)
    ext = np.empty_like(llr2d)
    best = np.empty(llr2d.shape, dtype=np.uint8)
    pnf = np.empty(m)
    bler = np.empty(m)
    siso_batch(llr2d, code.hcols, code.k, ptr, ranks, int(list_size), float(stop_prob),
               app, ext, best, pnf, bler)
    return app, ext, best, pnf, bler
