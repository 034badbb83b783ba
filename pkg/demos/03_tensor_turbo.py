# Encode a cubic tensor code and decode it iteratively.
import numpy as np

from tensorgrand import DecoderConfig, TensorCode, crc_code, encode_tensor, turbo_decode
from tensorgrand.channel import awgn, channel_llr, ebn0_to_sigma, hard_decision, modulate
from tensorgrand.tensor import mult_count

code = TensorCode(crc_code(0x15, 15), 3)
print(code, "rate", round(code.rate, 4))
print("binary multiplications to encode:", mult_count(3, 15, 10))

rng = np.random.default_rng(0)
info = rng.integers(0, 2, code.info_shape, dtype=np.uint8)
cw = encode_tensor(code, info)

sigma = ebn0_to_sigma(2.0, "ebn0", code.rate)
llr = channel_llr(awgn(modulate(cw), sigma, rng), sigma)
print("channel bit errors:", int((hard_decision(llr) != cw).sum()), "of", code.N)

cfg = DecoderConfig.for_dims(3)
out = turbo_decode(code, llr, cfg)
print(out.status.value, "after", out.half_iterations, "iterations")
print("information bit errors:", int((out.info_bits != info).sum()))
