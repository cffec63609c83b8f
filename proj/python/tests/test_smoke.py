import json

import numpy as np
import pytest

import patternbench as pb


def test_pristine_template_scores_one():
    t = pb.generate_template("block", 40, "continuous", seed=3)
    report = pb.score(t.matrix, t)
    assert report["final"] == pytest.approx(1.0, abs=1e-9)
    assert all(r["existence"] == 1.0 for r in report["regions"])
    assert {"ptype", "cells_bbox", "area", "existence", "disorder", "deviation", "score"} <= set(report["regions"][0])


def test_variations_follow_the_swap_ladder():
    t = pb.generate_template("star", 24, "binary", seed=1)
    records = pb.variations(t, seed=7, per_template=2)
    ladder = pb.swap_ladder(24)
    assert len(records) == 2 * len(ladder)
    assert [r["swap_count"] for r in records[: len(ladder)]] == ladder
    for r in records:
        m = r["matrix"]
        assert np.array_equal(m, m.T)


def test_reorder_returns_a_permutation():
    t = pb.generate_template("band", 30, "binary", seed=2)
    for algo in pb.algorithms():
        order = pb.reorder(t.matrix, algo, seed=4, kind="binary")
        assert sorted(order) == list(range(30))
    with pytest.raises(pb.ConfigError):
        pb.reorder(t.matrix, "nope")


def test_metrics_and_errors():
    ones = np.ones((2, 2), dtype=np.float32)
    assert pb.metric("me", ones, kind="binary") == 4.0
    with pytest.raises(pb.InvariantError):
        pb.metric("me", np.array([[0, 1], [0, 0]], dtype=np.float32), kind="binary")
    with pytest.raises(pb.Error):
        pb.metric("me", np.zeros((2, 3), dtype=np.float32))


def test_rbm_and_sidecar_round_trip(tmp_path):
    t = pb.generate_template("offdiag", 32, "continuous", seed=5, template_id="x")
    path = tmp_path / "x.rbm"
    pb.write_rbm(path, t.matrix, "continuous")
    m, kind = pb.read_rbm(path)
    assert kind == "continuous"
    assert np.array_equal(m, t.matrix)
    side = t.sidecar_json()
    assert json.loads(side)["template_id"] == "x"
    again = pb.template_from_json(side, m)
    assert pb.score(m, again)["final"] == pytest.approx(1.0, abs=1e-9)
    (tmp_path / "bad.rbm").write_bytes(b"RBM1")
    with pytest.raises(pb.ParseError):
        pb.read_rbm(tmp_path / "bad.rbm")
