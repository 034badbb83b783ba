# How the extrinsic weight alpha changes cubic decoding (short run).
from tensorgrand.sim import SimConfig, run_point
from tensorgrand.turbo import DecoderConfig

for alpha in (0.5, 0.6, 0.7):
    cfg = SimConfig("ebch:16:11", 3, [1.5], "ebn0",
                    decoder=DecoderConfig.for_dims(3, alpha=alpha),
                    min_block_errors=20, max_blocks=200, seed=0)
    r = run_point(cfg, 1.5)
    print(f"alpha={alpha}: blocks={r.blocks} BLER={r.bler:.3f} BER={r.ber:.2e} "
          f"iters={r.avg_half_iters:.2f}")
