import csv
import json
import math

import numpy as np
import pytest
from scipy.special import ndtr

from tensorgrand.cli import main
from tensorgrand.sim import CSV_FIELDS, SimConfig, run_point, sweep, write_csv, write_json
from tensorgrand.turbo import DecoderConfig


def small_cfg(**kw):
    params = dict(code_spec="ebch:8:4", dims=2, points=[2.0], point_kind="ebn0",
                  min_block_errors=10, max_blocks=200, seed=7)
    params.update(kw)
    return SimConfig(**params)


def test_config_guards():
    with pytest.raises(ValueError):
        small_cfg(min_block_errors=0)
    with pytest.raises(ValueError):
        small_cfg(max_blocks=5, min_block_errors=10)
    with pytest.raises(ValueError):
        small_cfg(dims=4)
    assert small_cfg().decoder == DecoderConfig.for_dims(2)


def test_noiseless_point():
    res = run_point(small_cfg(points=[60.0], max_blocks=20), 60.0)
    assert res.blocks == 20 and res.bler == 0 and res.ber == 0
    assert res.avg_half_iters == 0.5


def test_point_invariants_and_raw_ber():
    cfg = small_cfg(points=[0.0], min_block_errors=40, max_blocks=400)
    res = run_point(cfg, 0.0)
    assert res.blocks >= res.block_errors
    assert res.bler == res.block_errors / res.blocks
    assert 0 <= res.ber <= res.bler <= 1
    assert 0.5 <= res.avg_half_iters <= cfg.decoder.thres
    p = ndtr(-1 / res.sigma)
    se = math.sqrt(p * (1 - p) / res.coded_bits)
    assert abs(res.raw_ber - p) < 3 * se


def test_stops_at_min_block_errors():
    cfg = small_cfg(points=[-1.0], min_block_errors=5, max_blocks=1000, chunk=8)
    res = run_point(cfg, -1.0)
    assert res.block_errors == 5


def test_worker_count_does_not_change_results():
    rows = []
    for workers in (1, 2):
        r = sweep(small_cfg(points=[0.5, 1.5], min_block_errors=8, max_blocks=300, workers=workers,
                            chunk=16))
        rows.append([{k: v for k, v in p.row().items() if k != "seconds"} for p in r.points])
    assert rows[0] == rows[1]


def test_same_config_is_reproducible():
    a = sweep(small_cfg(points=[1.0]))
    b = sweep(small_cfg(points=[1.0]))
    assert [p.row()["bit_errors"] for p in a.points] == [p.row()["bit_errors"] for p in b.points]


def test_single_point_sweep_equals_run_point():
    cfg = small_cfg(points=[1.0])
    r = sweep(cfg).points[0].row()
    p = run_point(cfg, 1.0).row()
    r.pop("seconds"), p.pop("seconds")
    assert r == p


def test_seeds_statistically_compatible():
    """95% Wilson intervals of two seeds overlap at a point with >= 100 block errors."""
    def wilson(k, n, z=1.96):
        ph = k / n
        c = (ph + z * z / (2 * n)) / (1 + z * z / n)
        h = z * math.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / (1 + z * z / n)
        return c - h, c + h

    results = []
    for seed in (1, 2):
        cfg = SimConfig("ebch:8:4", 1, [1.0], "ebn0", min_block_errors=150, max_blocks=2000,
                        seed=seed)
        results.append(run_point(cfg, 1.0))
    (a_lo, a_hi), (b_lo, b_hi) = (wilson(r.block_errors, r.blocks) for r in results)
    assert all(r.block_errors >= 100 for r in results)
    assert a_lo <= b_hi and b_lo <= a_hi


def test_bler_relative_standard_error():
    cfg = SimConfig("ebch:8:4", 1, [2.0], "ebn0", min_block_errors=100, max_blocks=10**5, seed=3)
    r = run_point(cfg, 2.0)
    rse = math.sqrt((1 - r.bler) / (r.bler * r.blocks))
    assert rse <= 0.10


def test_outputs(tmp_path):
    res = sweep(small_cfg(points=[1.0, 2.0, 3.0]))
    out, js = tmp_path / "r.csv", tmp_path / "r.json"
    write_csv(res, out)
    write_json(res, js)
    rows = list(csv.DictReader(open(out)))
    assert len(rows) == 3
    assert list(rows[0]) == CSV_FIELDS
    payload = json.load(open(js))
    assert payload["config"]["code"]["N"] == 64
    assert payload["config"]["decoder"]["alpha"] == 0.5
    assert len(payload["points"]) == 3


def test_sweep_continues_after_point_failure(monkeypatch):
    import tensorgrand.sim as sim

    real = sim.run_point

    def flaky(cfg, point, *a, **k):
        if point == 1.0:
            raise RuntimeError("boom")
        return real(cfg, point, *a, **k)

    monkeypatch.setattr(sim, "run_point", flaky)
    res = sim.sweep(small_cfg(points=[1.0, 2.0]))
    assert [p.point_db for p in res.points] == [2.0]
    assert "boom" in res.errors[1.0]


def test_cli_help(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    assert "--code" in capsys.readouterr().out


def test_cli_missing_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--points", "1"])
    assert exc.value.code != 0
    assert "--code" in capsys.readouterr().err


@pytest.mark.parametrize("argv, needle", [
    (["--code", "bch:1:2", "--points", "1"], "bad code spec"),
    (["--code", "ebch:8:4", "--points", "1", "--bogus"], "unrecognized"),
    (["--code", "ebch:8:4", "--points", "a,b"], "bad point list"),
])
def test_cli_config_errors(argv, needle, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert needle in capsys.readouterr().err


def test_cli_unwritable_output(capsys):
    rc = main(["--code", "ebch:8:4", "--points", "1", "--out", "/nonexistent/dir/x.csv"])
    assert rc == 3
    assert "does not exist" in capsys.readouterr().err


def test_cli_run(tmp_path, capsys):
    out, js = tmp_path / "o.csv", tmp_path / "o.json"
    rc = main(["--code", "crc:0x15:15", "--dims", "2", "--points", "4,5", "--point-kind", "ebn0",
               "--min-block-errors", "2", "--max-blocks", "20", "--seed", "1",
               "--out", str(out), "--json", str(js)])
    assert rc == 0
    assert len(list(csv.DictReader(open(out)))) == 2
    assert json.load(open(js))["config"]["code_spec"] == "crc:0x15:15"
    assert "[225,100]" in capsys.readouterr().out


def test_cli_design_space(tmp_path):
    path = tmp_path / "ds.csv"
    assert main(["--design-space", str(path)]) == 0
    lines = open(path).read().splitlines()
    assert lines[0] == "l,n,k,length,rate"
    assert any(line.startswith("3,122,97,1815848,") for line in lines)
