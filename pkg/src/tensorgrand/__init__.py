"""Square and cubic tensor product codes with SOGRAND iterative decoding."""
from .channel import ChannelParams, PointKind, awgn, channel_llr, ebn0_to_sigma, modulate
from .component_code import (
    ComponentCode,
    KoopmanPolynomial,
    crc_code,
    ebch_code,
    encode,
    enumerate_codebook,
    parse_code_spec,
    syndrome_ok,
)
from .orbgrand import GrandList, grand_list_decode, next_pattern, pattern_probability, rank_positions
from .sim import SimConfig, SimResult, run_point, sweep
from .sogrand import SisoResult, estimate_p_notfound, should_stop_early, siso_decode
from .tensor import TensorCode, design_space, encode_tensor, extract_info, mult_count, slices
from .turbo import DecoderConfig, DecodeOutcome, Status, turbo_decode, validity_check

__version__ = "0.1.0"
