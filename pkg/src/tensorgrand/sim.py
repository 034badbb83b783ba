"""Monte-Carlo BLER/BER/iteration measurements over BPSK/AWGN.

Each block draws from its own generator seeded by ``(seed, point index,
block index)`` so results do not depend on how blocks are spread over
workers. The stopping rule is applied in block order after the fact, which
keeps the reported counts identical for any worker count.
"""
from __future__ import annotations

import csv
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .channel import ChannelParams, PointKind, awgn, channel_llr, hard_decision, modulate
from .component_code import ComponentCode, parse_code_spec
from .tensor import TensorCode, encode_tensor
from .turbo import DecoderConfig, Status, turbo_decode

log = logging.getLogger(__name__)

CSV_FIELDS = ["point_db", "point_kind", "blocks", "block_errors", "bit_errors", "bler", "ber",
              "raw_ber", "avg_half_iters", "abandon_frac", "seconds"]


@dataclass
class SimConfig:
    code_spec: str
    dims: int
    points: list[float]
    point_kind: PointKind = PointKind.SNR
    decoder: DecoderConfig | None = None
    min_block_errors: int = 100
    max_blocks: int = 10**6
    seed: int = 0
    workers: int = 1
    chunk: int = 32

    def __post_init__(self):
        self.point_kind = PointKind(self.point_kind)
        self.points = [float(p) for p in self.points]
        if self.dims not in (1, 2, 3):
            raise ValueError("dims must be 1, 2 or 3")
        if self.min_block_errors < 1:
            raise ValueError("min_block_errors must be at least 1")
        if self.max_blocks < self.min_block_errors:
            raise ValueError("max_blocks must be >= min_block_errors")
        if self.workers < 1 or self.chunk < 1:
            raise ValueError("workers and chunk must be positive")
        if self.decoder is None:
            self.decoder = DecoderConfig.for_dims(self.dims)

    @property
    def component(self) -> ComponentCode:
        return parse_code_spec(self.code_spec)

    @property
    def code(self) -> TensorCode:
        return TensorCode(self.component, self.dims)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["point_kind"] = self.point_kind.value
        code = self.code
        d["code"] = {"label": str(code), "n": code.n, "k": code.k, "N": code.N, "K": code.K,
                     "rate": code.rate}
        return d


@dataclass
class PointResult:
    point_db: float
    point_kind: PointKind
    sigma: float
    blocks: int = 0
    block_errors: int = 0
    bit_errors: int = 0
    raw_bit_errors: int = 0
    coded_bits: int = 0
    info_bits: int = 0
    half_iters: float = 0.0
    abandoned: int = 0
    seconds: float = 0.0
    truncated: bool = False

    @property
    def bler(self) -> float:
        return self.block_errors / self.blocks if self.blocks else float("nan")

    @property
    def ber(self) -> float:
        return self.bit_errors / self.info_bits if self.info_bits else float("nan")

    @property
    def raw_ber(self) -> float:
        return self.raw_bit_errors / self.coded_bits if self.coded_bits else float("nan")

    @property
    def avg_half_iters(self) -> float:
        return self.half_iters / self.blocks if self.blocks else float("nan")

    @property
    def abandon_frac(self) -> float:
        return self.abandoned / self.blocks if self.blocks else float("nan")

    def row(self) -> dict:
        return {
            "point_db": self.point_db, "point_kind": self.point_kind.value,
            "blocks": self.blocks, "block_errors": self.block_errors,
            "bit_errors": self.bit_errors, "bler": self.bler, "ber": self.ber,
            "raw_ber": self.raw_ber, "avg_half_iters": self.avg_half_iters,
            "abandon_frac": self.abandon_frac, "seconds": self.seconds,
        }


@dataclass
class SimResult:
    config: SimConfig
    points: list[PointResult] = field(default_factory=list)
    errors: dict[float, str] = field(default_factory=dict)


def simulate_block(code: TensorCode, cfg: DecoderConfig, sigma: float, seed: int,
                   point_index: int, block_index: int) -> tuple[int, int, float, bool]:
    """One encode -> channel -> decode trial.

    Returns (info bit errors, raw channel bit errors, half-iterations, abandoned).
    """
    rng = np.random.default_rng([seed, point_index, block_index])
    info = rng.integers(0, 2, code.info_shape, dtype=np.uint8)
    cw = encode_tensor(code, info)
    y = awgn(modulate(cw), sigma, rng)
    llr = channel_llr(y, sigma)
    raw = int(np.count_nonzero(hard_decision(llr) != cw))
    out = turbo_decode(code, llr, cfg)
    errs = int(np.count_nonzero(out.info_bits != info))
    return errs, raw, out.half_iterations, out.status is Status.ABANDONED


def _run_chunk(args):
    code_spec, dims, cfg, sigma, seed, point_index, start, stop = args
    code = TensorCode(parse_code_spec(code_spec), dims)
    return [simulate_block(code, cfg, sigma, seed, point_index, b) for b in range(start, stop)]


def run_point(cfg: SimConfig, point: float, point_index: int = 0,
              executor: ProcessPoolExecutor | None = None) -> PointResult:
    code = cfg.code
    ch = ChannelParams.at(point, cfg.point_kind, code.rate)
    res = PointResult(point_db=ch.point_db, point_kind=ch.point_kind, sigma=ch.sigma)
    t0 = time.perf_counter()
    width = cfg.chunk * (cfg.workers if executor is not None else 1)
    next_block = 0
    try:
        while res.blocks < cfg.max_blocks and res.block_errors < cfg.min_block_errors:
            stop = min(next_block + width, cfg.max_blocks)
            bounds = list(range(next_block, stop, cfg.chunk)) + [stop]
            jobs = [(cfg.code_spec, cfg.dims, cfg.decoder, ch.sigma, cfg.seed, point_index, a, b)
                    for a, b in zip(bounds[:-1], bounds[1:])]
            if executor is None:
                batches = map(_run_chunk, jobs)
            else:
                batches = executor.map(_run_chunk, jobs)
            next_block = stop
            for batch in batches:
                for errs, raw, half, abandoned in batch:
                    if res.blocks >= cfg.max_blocks or res.block_errors >= cfg.min_block_errors:
                        break
                    res.blocks += 1
                    res.block_errors += errs > 0
                    res.bit_errors += errs
                    res.raw_bit_errors += raw
                    res.coded_bits += code.N
                    res.info_bits += code.K
                    res.half_iters += half
                    res.abandoned += abandoned
    except KeyboardInterrupt:
        res.truncated = True
        log.warning("interrupted at %s dB after %d blocks", point, res.blocks)
    res.seconds = time.perf_counter() - t0
    return res


def sweep(cfg: SimConfig) -> SimResult:
    if not cfg.points:
        raise ValueError("need at least one operating point")
    result = SimResult(cfg)
    executor = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        for i, p in enumerate(cfg.points):
            try:
                pr = run_point(cfg, p, i, executor)
            except Exception as exc:  # one bad point must not sink the sweep
                log.error("point %s failed: %s", p, exc)
                result.errors[p] = str(exc)
                continue
            result.points.append(pr)
            log.info("%s dB: BLER %.3e BER %.3e (%d blocks)", p, pr.bler, pr.ber, pr.blocks)
            if pr.truncated:
                break
    finally:
        if executor is not None:
            executor.shutdown()
    return result


def write_csv(result: SimResult, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for p in result.points:
            writer.writerow(p.row())


def write_json(result: SimResult, path) -> None:
    payload = {
        "config": result.config.to_dict(),
        "points": [dict(p.row(), sigma=p.sigma, truncated=p.truncated) for p in result.points],
        "errors": {str(k): v for k, v in result.errors.items()},
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
