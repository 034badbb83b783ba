# Soft-output list decoding of one noisy component codeword.
import numpy as np

from tensorgrand import ebch_code, encode, siso_decode
from tensorgrand.channel import awgn, channel_llr, ebn0_to_sigma, modulate
from tensorgrand.orbgrand import grand_list_decode, next_pattern
from itertools import islice

# first few rank sets ORBGRAND tries on a length-6 word
print([p.ranks for p in islice(next_pattern(6), 10)])

code = ebch_code(16, 11)
rng = np.random.default_rng(3)
msg = rng.integers(0, 2, code.k)
cw = encode(code, msg)
sigma = ebn0_to_sigma(2.0, "ebn0", code.rate)
llr = channel_llr(awgn(modulate(cw), sigma, rng), sigma)

glist = grand_list_decode(code, llr, L=4, stop_prob=1e-5)
print("queries", glist.queries, "coverage", round(glist.coverage, 4))
for c, w in glist.entries:
    print("  candidate", "".join(map(str, c)), f"prob {w:.3e}")

res = siso_decode(code, llr, L=4, stop_prob=1e-5)
print("input  LLR", np.round(llr, 1))
print("APP    LLR", np.round(res.app_llr, 1))
print("extrinsic ", np.round(res.ext_llr, 1))
print("P(not in list)", f"{res.p_notfound:.2e}", " list BLER", f"{res.list_bler:.2e}")
print("best == sent:", np.array_equal(res.best, cw))
