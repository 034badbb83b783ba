"""Soft-output GRAND: bitwise APP and extrinsic LLRs from a GRAND list."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import hard_decision
from .component_code import ComponentCode
from .orbgrand import GrandList, grand_list_decode, unexplored_codeword_mass

LLR_MAX = 40.0


@dataclass
class SisoResult:
    app_llr: np.ndarray
    ext_llr: np.ndarray
    best: np.ndarray
    p_notfound: float
    list_bler: float
    glist: GrandList | None = None


def estimate_p_notfound(glist: GrandList, n: int, k: int) -> float:
    """Unnormalised mass attributed to codewords outside the list."""
    return unexplored_codeword_mass(glist.coverage, len(glist.entries), glist.queries, n, k)


def siso_decode(
    code: ComponentCode,
    llr_in,
    L: int = 4,
    max_queries: int | None = None,
    stop_prob: float = 0.0,
    one_line: bool = False,
) -> SisoResult:
    """Soft-input soft-output decode of one component word.

    Each list entry ``c`` carries the probability ``w(c)`` of the noise
    pattern that produced it; the not-in-list mass ``m`` is shared among
    the bits according to the input prior of each bit::

        L_APP[j] = ln (sum_{c_j=0} w(c) + m P(b_j=0)) / (sum_{c_j=1} w(c) + m P(b_j=1))

    Input LLRs are clipped to +-40 first, and output LLRs are saturated at
    the same bound. The extrinsic output is ``app_llr - clipped input``.
    """
    llr = np.clip(np.asarray(llr_in, dtype=np.float64), -LLR_MAX, LLR_MAX)
    glist = grand_list_decode(code, llr, L, max_queries, stop_prob, one_line)
    if not glist.entries:
        return SisoResult(llr.copy(), np.zeros_like(llr), hard_decision(llr), 1.0, 1.0, glist)

    words = np.array([c for c, _ in glist.entries], dtype=np.uint8)
    w = np.array([p for _, p in glist.entries])
    mass = estimate_p_notfound(glist, code.n, code.k)
    # rescale so the largest weight is 1; only ratios matter
    scale = w.max()
    w = w / scale
    mass = mass / scale
    total = w.sum() + mass

    prior0 = 1.0 / (1.0 + np.exp(-llr))
    num0 = ((words == 0) * w[:, None]).sum(axis=0) + mass * prior0
    num1 = ((words == 1) * w[:, None]).sum(axis=0) + mass * (1.0 - prior0)
    with np.errstate(divide="ignore"):
        app = np.log(num0) - np.log(num1)
    app = np.clip(np.nan_to_num(app, nan=0.0, posinf=LLR_MAX, neginf=-LLR_MAX), -LLR_MAX, LLR_MAX)

    best = words[int(np.argmax(w))]
    return SisoResult(
        app_llr=app,
        ext_llr=app - llr,
        best=best.copy(),
        p_notfound=float(mass / total),
        list_bler=float(1.0 - w.max() / total),
        glist=glist,
    )


def should_stop_early(result: SisoResult, threshold: float) -> bool:
    return result.list_bler < threshold
