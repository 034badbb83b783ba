"""Short systematic binary linear codes used as tensor-code components.

Bit index 0 is the first (leftmost, first transmitted) bit of a word. For
cyclic codes this is the coefficient of the highest power of ``x``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


ENUMERATE_MAX_K = 16


@dataclass(frozen=True)
class KoopmanPolynomial:
    """CRC polynomial in Koopman notation (the ``+1`` term is implicit)."""

    value: int

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError(f"Koopman polynomial must be positive, got {self.value:#x}")

    @property
    def degree(self) -> int:
        return self.value.bit_length()

    def expanded(self) -> int:
        """Full generator polynomial as an integer, bit i = coefficient of x^i."""
        return (self.value << 1) | 1

    def coefficients(self) -> np.ndarray:
        """Coefficients from x^degree down to x^0."""
        g = self.expanded()
        d = self.degree
        return np.array([(g >> (d - i)) & 1 for i in range(d + 1)], dtype=np.uint8)


@dataclass(frozen=True, eq=False)
class ComponentCode:
    """An (n, k) systematic binary linear code with ``generator = [I_k | P]``."""

    n: int
    k: int
    generator: np.ndarray
    parity_check: np.ndarray
    label: str = ""
    # column j of H packed into an int, bit r = H[r, j]
    hcols: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        G = np.asarray(self.generator, dtype=np.uint8) % 2
        H = np.asarray(self.parity_check, dtype=np.uint8) % 2
        if not 0 < self.k < self.n:
            raise ValueError(f"need 0 < k < n, got (n, k) = ({self.n}, {self.k})")
        if G.shape != (self.k, self.n) or H.shape != (self.n - self.k, self.n):
            raise ValueError("generator/parity-check shapes do not match (n, k)")
        if not np.array_equal(G[:, : self.k], np.eye(self.k, dtype=np.uint8)):
            raise ValueError("generator is not in systematic form [I | P]")
        if np.any((G.astype(np.int64) @ H.T.astype(np.int64)) % 2):
            raise ValueError("H G^T != 0 over GF(2)")
        if gf2_rank(H) != self.n - self.k:
            raise ValueError("parity-check matrix is rank deficient")
        G.setflags(write=False)
        H.setflags(write=False)
        weights = 1 << np.arange(self.n - self.k, dtype=np.int64)
        hcols = (H.astype(np.int64) * weights[:, None]).sum(axis=0)
        hcols.setflags(write=False)
        object.__setattr__(self, "generator", G)
        object.__setattr__(self, "parity_check", H)
        object.__setattr__(self, "hcols", hcols)

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    @property
    def rate(self) -> float:
        return self.k / self.n

    @classmethod
    def from_parity(cls, P, label: str = "") -> "ComponentCode":
        """Build from the k x (n-k) parity part of a systematic generator."""
        P = np.asarray(P, dtype=np.uint8) % 2
        k, r = P.shape
        G = np.hstack([np.eye(k, dtype=np.uint8), P])
        H = np.hstack([P.T, np.eye(r, dtype=np.uint8)])
        return cls(k + r, k, G, H, label)

    def __repr__(self):
        return f"ComponentCode({self.label or 'linear'}, n={self.n}, k={self.k})"


def gf2_rank(M) -> int:
    A = np.array(M, dtype=np.uint8) % 2
    rank = 0
    rows, cols = A.shape
    for c in range(cols):
        pivots = np.nonzero(A[rank:, c])[0]
        if pivots.size == 0:
            continue
        p = rank + pivots[0]
        A[[rank, p]] = A[[p, rank]]
        others = np.nonzero(A[:, c])[0]
        others = others[others != rank]
        A[others] ^= A[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def poly_remainder(bits, g) -> np.ndarray:
    """Remainder of ``bits(x) mod g(x)`` over GF(2), both highest degree first.

    Returns ``len(g) - 1`` coefficients, highest degree first.
    """
    g = np.asarray(g, dtype=np.uint8)
    d = g.size - 1
    reg = np.array(bits, dtype=np.uint8)
    for i in range(reg.size - d):
        if reg[i]:
            reg[i : i + d + 1] ^= g
    return reg[-d:].copy()


def _cyclic_parity(n: int, g) -> np.ndarray:
    """Parity part P of the systematic cyclic code of length n generated by g."""
    d = len(g) - 1
    k = n - d
    P = np.zeros((k, d), dtype=np.uint8)
    for i in range(k):
        shifted = np.zeros(n, dtype=np.uint8)
        shifted[i] = 1
        P[i] = poly_remainder(shifted, g)
    return P


def crc_code(poly, n: int) -> ComponentCode:
    """Systematic CRC code: message followed by the remainder of m(x) x^d / g(x)."""
    if not isinstance(poly, KoopmanPolynomial):
        poly = KoopmanPolynomial(int(poly))
    d = poly.degree
    if n <= d:
        raise ValueError(f"codeword length {n} must exceed CRC degree {d}")
    P = _cyclic_parity(n, poly.coefficients())
    return ComponentCode.from_parity(P, label=f"CRC {poly.value:#x}")


# (n, k) -> (length of the underlying BCH/Hamming code, generator polynomial high->low)
_EBCH_CATALOG = {
    (8, 4): (7, (1, 0, 1, 1)),  # x^3 + x + 1
    (16, 11): (15, (1, 0, 0, 1, 1)),  # x^4 + x + 1
    (16, 7): (15, (1, 1, 1, 0, 1, 0, 0, 0, 1)),  # (x^4+x+1)(x^4+x^3+x^2+x+1)
    (32, 26): (31, (1, 0, 0, 1, 0, 1)),  # x^5 + x^2 + 1
}


def ebch_code(n: int, k: int) -> ComponentCode:
    """Extended BCH code: a cyclic BCH code with an appended even-parity bit."""
    try:
        base_n, g = _EBCH_CATALOG[(n, k)]
    except KeyError:
        supported = ", ".join(f"({a},{b})" for a, b in sorted(_EBCH_CATALOG))
        raise ValueError(f"eBCH ({n},{k}) not in catalog; supported: {supported}") from None
    P = _cyclic_parity(base_n, g)
    overall = (1 + P.sum(axis=1)) % 2
    P = np.hstack([P, overall[:, None].astype(np.uint8)])
    return ComponentCode.from_parity(P, label=f"eBCH({n},{k})")


def parse_code_spec(text: str) -> ComponentCode:
    """Parse ``crc:<koopman hex>:<n>`` or ``ebch:<n>:<k>``."""
    parts = text.strip().lower().split(":")
    try:
        if parts[0] == "crc" and len(parts) == 3:
            return crc_code(KoopmanPolynomial(int(parts[1], 16)), int(parts[2]))
        if parts[0] == "ebch" and len(parts) == 3:
            return ebch_code(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ValueError(f"bad code spec {text!r}: {exc}") from None
    raise ValueError(f"bad code spec {text!r}: expected crc:<hex>:<n> or ebch:<n>:<k>")


def encode(code: ComponentCode, msg) -> np.ndarray:
    msg = np.asarray(msg, dtype=np.uint8)
    if msg.shape[-1] != code.k:
        raise ValueError(f"message length {msg.shape[-1]} != k = {code.k}")
    return ((msg.astype(np.int64) @ code.generator) % 2).astype(np.uint8)


def syndrome(code: ComponentCode, word) -> np.ndarray:
    word = np.asarray(word, dtype=np.uint8)
    if word.shape[-1] != code.n:
        raise ValueError(f"word length {word.shape[-1]} != n = {code.n}")
    return ((word.astype(np.int64) @ code.parity_check.T) % 2).astype(np.uint8)


def syndrome_ok(code: ComponentCode, word) -> bool:
    return not syndrome(code, word).any()


def enumerate_codebook(code: ComponentCode) -> np.ndarray:
    """All 2^k codewords as rows, in order of the integer value of the message."""
    if code.k > ENUMERATE_MAX_K:
        raise ValueError(f"k = {code.k} too large to enumerate (max {ENUMERATE_MAX_K})")
    idx = np.arange(2**code.k)[:, None]
    msgs = (idx >> np.arange(code.k - 1, -1, -1)) & 1
    return encode(code, msgs)


def min_distance(code: ComponentCode) -> int:
    """Brute-force minimum distance (minimum nonzero codeword weight)."""
    weights = enumerate_codebook(code).sum(axis=1)
    return int(weights[weights > 0].min())
