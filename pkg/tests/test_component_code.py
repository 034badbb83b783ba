import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorgrand.component_code import (
    KoopmanPolynomial,
    crc_code,
    ebch_code,
    encode,
    enumerate_codebook,
    min_distance,
    parse_code_spec,
    syndrome_ok,
)

CATALOG = [("crc", 0x15, 15), ("ebch", 16, 11), ("ebch", 8, 4), ("ebch", 16, 7)]


def make(spec):
    kind, a, b = spec
    return crc_code(a, b) if kind == "crc" else ebch_code(a, b)


def crc_oracle(msg_bits, koopman, n):
    """Systematic CRC codeword by integer long division."""
    g = (koopman << 1) | 1
    d = g.bit_length() - 1
    m = int("".join(map(str, msg_bits)), 2)
    reg = m << d
    for shift in range(n - 1, d - 1, -1):
        if reg >> shift & 1:
            reg ^= g << (shift - d)
    word = (m << d) | reg
    return [int(b) for b in format(word, f"0{n}b")]


def test_koopman_expansion():
    p = KoopmanPolynomial(0x15)
    assert p.degree == 5
    # x^5 + x^3 + x + 1
    assert p.coefficients().tolist() == [1, 0, 1, 0, 1, 1]


def test_koopman_rejects_zero():
    with pytest.raises(ValueError):
        KoopmanPolynomial(0)


def test_crc_dimensions():
    code = crc_code(0x15, 15)
    assert (code.n, code.k) == (15, 10)


def test_crc_rejects_short_length():
    with pytest.raises(ValueError):
        crc_code(0x15, 5)


def test_crc_unit_message_codeword():
    code = crc_code(0x15, 15)
    msg = [1] + [0] * 9
    assert encode(code, msg).tolist() == crc_oracle(msg, 0x15, 15)
    assert encode(code, msg).tolist() == [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1]


@pytest.mark.parametrize("msg", [[1, 0, 1, 1, 0, 0, 1, 1, 1, 0], [0, 1, 1, 1, 1, 1, 1, 1, 1, 1]])
def test_crc_matches_division_oracle(msg):
    code = crc_code(0x15, 15)
    assert encode(code, msg).tolist() == crc_oracle(msg, 0x15, 15)


def test_crc_other_lengths_match_oracle():
    rng = np.random.default_rng(3)
    for poly, n in [(0x15, 12), (0x9, 10), (0x83, 17)]:
        code = crc_code(poly, n)
        for _ in range(20):
            m = rng.integers(0, 2, code.k).tolist()
            assert encode(code, m).tolist() == crc_oracle(m, poly, n)


@pytest.mark.parametrize("nk, d", [((16, 11), 4), ((8, 4), 4), ((16, 7), 6)])
def test_ebch_min_distance(nk, d):
    assert min_distance(ebch_code(*nk)) == d


def test_ebch_even_weight():
    for nk in [(16, 11), (8, 4)]:
        assert np.all(enumerate_codebook(ebch_code(*nk)).sum(axis=1) % 2 == 0)


def test_ebch_unsupported_lists_catalog():
    with pytest.raises(ValueError, match=r"supported: .*\(16,11\)"):
        ebch_code(20, 10)


@pytest.mark.parametrize("spec", CATALOG)
def test_zero_message(spec):
    code = make(spec)
    assert not encode(code, np.zeros(code.k, dtype=np.uint8)).any()
    assert syndrome_ok(code, np.zeros(code.n, dtype=np.uint8))


@pytest.mark.parametrize("spec", CATALOG)
def test_systematic_and_valid(spec):
    code = make(spec)
    rng = np.random.default_rng(0)
    for m in rng.integers(0, 2, (1000, code.k)):
        c = encode(code, m)
        assert np.array_equal(c[: code.k], m)
        assert syndrome_ok(code, c)


@pytest.mark.parametrize("spec", CATALOG)
def test_single_flip_detected(spec):
    code = make(spec)
    rng = np.random.default_rng(1)
    c = encode(code, rng.integers(0, 2, code.k))
    for j in range(code.n):
        w = c.copy()
        w[j] ^= 1
        assert not syndrome_ok(code, w)


def test_syndrome_agrees_with_codebook_membership():
    code = ebch_code(8, 4)
    book = {tuple(c) for c in enumerate_codebook(code)}
    for word in itertools.product([0, 1], repeat=8):
        assert syndrome_ok(code, word) == (word in book)


def test_length_mismatch():
    code = ebch_code(8, 4)
    with pytest.raises(ValueError):
        encode(code, [0, 1])
    with pytest.raises(ValueError):
        syndrome_ok(code, [0] * 7)


def test_codebook_sizes_distinct():
    assert len(enumerate_codebook(ebch_code(8, 4))) == 16
    book = enumerate_codebook(crc_code(0x15, 15))
    assert len({tuple(c) for c in book}) == 1024


def test_codebook_min_pairwise_distance_16_11():
    book = enumerate_codebook(ebch_code(16, 11)).astype(np.int64)
    packed = book @ (1 << np.arange(16))
    # pairwise distance of a linear code = weight of the difference; brute force over pairs
    best = 16
    for i in range(0, len(packed), 64):
        diff = packed[i : i + 64, None] ^ packed[None, :]
        w = np.array([bin(int(x)).count("1") for x in diff.ravel()]).reshape(diff.shape)
        w[w == 0] = 99
        best = min(best, int(w.min()))
    assert best == 4


@pytest.mark.parametrize("spec", [("ebch", 8, 4), ("crc", 0x15, 15), ("ebch", 16, 11)])
def test_codebook_closed_under_addition(spec):
    code = make(spec)
    book = enumerate_codebook(code).astype(np.int64)
    packed = set((book @ (1 << np.arange(code.n))).tolist())
    arr = np.fromiter(packed, dtype=np.int64)
    for a in arr[:: max(1, len(arr) // 64)]:
        assert set((arr ^ a).tolist()) == packed


def test_enumerate_guard():
    with pytest.raises(ValueError):
        enumerate_codebook(ebch_code(32, 26))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=11, max_size=11))
def test_encode_syndrome_property(msg):
    code = ebch_code(16, 11)
    assert syndrome_ok(code, encode(code, msg))


def test_parse_code_spec():
    assert (parse_code_spec("crc:0x15:15").k) == 10
    assert (parse_code_spec("ebch:16:11").n) == 16
    assert (parse_code_spec("ebch:8:4").k) == 4
    for bad in ["crc:0x15", "bch:15:7", "ebch:16:x", "crc:0x0:15"]:
        with pytest.raises(ValueError):
            parse_code_spec(bad)
