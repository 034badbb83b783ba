# Component codes: build them, look at their generator matrices, check distances.
import numpy as np

from tensorgrand import crc_code, ebch_code, encode, syndrome_ok
from tensorgrand.component_code import KoopmanPolynomial, min_distance

# Koopman notation drops the +1 term, so 0x15 is x^5 + x^3 + x + 1
poly = KoopmanPolynomial(0x15)
print("degree", poly.degree, "coefficients (high to low)", poly.coefficients())

crc = crc_code(0x15, 15)
print(crc.label, "rate", crc.rate)
print("generator row 0:", "".join(map(str, crc.generator[0])))

for code in (crc, ebch_code(8, 4), ebch_code(16, 11), ebch_code(16, 7)):
    print(f"{code.label:>14}  n={code.n:2d} k={code.k:2d}  d_min={min_distance(code)}")

# a random message, its codeword, and a single flipped bit
rng = np.random.default_rng(1)
msg = rng.integers(0, 2, crc.k)
cw = encode(crc, msg)
print("codeword ok:", syndrome_ok(crc, cw))
cw[4] ^= 1
print("after one flip:", syndrome_ok(crc, cw))
