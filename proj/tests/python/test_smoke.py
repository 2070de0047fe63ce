import math

import pytest

import ergodesk

SKEW = {"kind": "skew"}
PRODUCT = {"kind": "product", "probs": [0.5, 0.5]}


def test_version():
    assert ergodesk.__version__ == "0.1.0"


def test_entropy():
    assert ergodesk.bernoulli_entropy([0.5, 0.5]) == pytest.approx(math.log(2), abs=1e-15)
    assert ergodesk.bernoulli_entropy([0.25] * 4) == pytest.approx(math.log(4), abs=1e-15)
    with pytest.raises(ValueError):
        ergodesk.bernoulli_entropy([0.5, 0.6])


def test_tower():
    assert ergodesk.tower(SKEW, 3) == ["{0}", "<(1,0)>", "<(1,0), (0,1)>"]
    with pytest.raises(ValueError):
        ergodesk.tower(PRODUCT, 3)


def test_spectrum_and_intertwiner():
    assert ergodesk.spectrum(SKEW)["tag"] == "mixed"
    check = ergodesk.intertwiner(SKEW, PRODUCT, 8)
    assert check["mismatches"] == 0
    assert check["checked"] > 0


def test_residual():
    assert ergodesk.residual(PRODUCT, 0, window=4)["residual"] <= 1e-8
    assert ergodesk.residual(PRODUCT, 1, window=4)["residual"] == pytest.approx(2 * math.sin(math.pi / 12), abs=1e-7)


def test_correlation():
    coin = {"kind": "bernoulli", "probs": [0.5, 0.5]}
    a = {"type": "cylinder", "cylinder": [[0, 1]]}
    assert ergodesk.correlation(coin, a, a, 3)["value"] == pytest.approx(0.25)
    mc = ergodesk.correlation(coin, a, a, 3, samples=20000, seed=1)
    assert abs(mc["value"] - 0.25) < 4 * mc["stderr"]


def test_scenario_deterministic():
    cfg = {"scenario": "reproduce-kolmogorov", "samples": 5000, "block_length": 4}
    a = ergodesk.run_scenario(cfg)
    assert a == ergodesk.run_scenario(cfg)
    verdicts = {v["name"]: v["value"] for v in a["verdicts"]}
    assert verdicts["spacial 0-1"].startswith("not spacially isomorphic")


def test_bad_config():
    with pytest.raises(ValueError):
        ergodesk.run_scenario({"scenario": "reproduce-letter", "window": 0})
    with pytest.raises(ValueError):
        ergodesk.run_scenario({"unknown": 1})
