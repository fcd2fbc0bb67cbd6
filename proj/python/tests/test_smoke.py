import json

import numpy as np
import pytest

import adialin


def test_instance_generation():
    inst = adialin.generate_instance(4, 10.0, 3)
    assert inst.dim == 4
    s = np.linalg.svd(inst.a, compute_uv=False)
    assert s.max() / s.min() == pytest.approx(10.0, rel=1e-8)
    assert np.linalg.norm(inst.b) == pytest.approx(1.0)
    back = adialin.Instance.from_json(inst.to_json())
    assert np.array_equal(back.a, inst.a)


def test_solve_matches_direct_solution():
    inst = adialin.generate_instance(2, 10.0, 1)
    tr = adialin.solve(inst, 2000)
    x = np.linalg.solve(inst.a, inst.b)
    x /= np.linalg.norm(x)
    assert tr.fidelity > 0.95
    assert abs(float(np.dot(x, tr.solution))) == pytest.approx(tr.fidelity, abs=1e-12)


def test_circuit_and_dense_engines_agree():
    inst = adialin.generate_instance(2, 20.0, 5)
    a = adialin.solve(inst, 100, engine="circuit", keep_records=True)
    b = adialin.solve(inst, 100, engine="dense", keep_records=True)
    assert np.allclose(a.final_state, b.final_state, atol=1e-9)
    assert len(a.records) == 100
    assert a.records[0].segment_depth == 20


def test_block_encoding_top_left_block():
    rng = np.random.default_rng(0)
    m = rng.uniform(-1, 1, (4, 4))
    u, alpha, gates = adialin.block_encode(m)
    assert alpha == 0.25
    assert gates == 16 + 2 + 4
    assert np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=1e-10)
    assert np.allclose(adialin.encoded_block(m), m / 4, atol=1e-10)
    with pytest.raises(ValueError):
        adialin.block_encode(2 * np.ones((2, 2)))


def test_predict_signs_table():
    one = lambda v: np.array([v])
    assert adialin.predict_signs(one(0.5), one(0.4), one(0.6), 0.01) == [1]
    assert adialin.predict_signs(one(0.005), one(0.05), one(0.04), 0.01) == [-1]
    assert adialin.predict_signs(one(0.005), one(-0.02), one(0.03), 0.01) == [1]


def test_truncation_and_depth():
    r = adialin.truncate_imaginary(np.array([0.6, 0.8]), np.zeros(2))
    assert r["truncation_accepted"]
    assert np.allclose(r["solution"], [0.6, 0.8])
    r = adialin.truncate_imaginary(np.array([0.1, 0.1]), np.array([0.7, 0.7]), 0.1)
    assert not r["truncation_accepted"]
    inst = adialin.generate_instance(4, 10.0, 0)
    d200 = adialin.depth_report(inst, 200)
    d2000 = adialin.depth_report(inst, 2000)
    assert d200["dynamic_total"] == d2000["dynamic_total"] == 68
    assert d2000["conventional_total"] == 2000 * 68


def test_reference_evolution_form():
    inst = adialin.generate_instance(2, 10.0, 2)
    states = adialin.evolve_product(inst, 50, mode="exact")
    assert states.shape == (4, 51)
    assert np.abs(states[:2].imag).max() < 1e-10
    assert np.abs(states[2:].real).max() < 1e-10


def test_small_sweep_is_deterministic():
    cfg = json.dumps({"dims": [2], "kappas": [10], "steps_list": [100, 200], "trials": 2})
    rows = adialin.run_sweep(cfg)
    assert len(rows) == 4
    assert {r["status"] for r in rows} <= {"ok", "modify_signal"}
    assert adialin.sweep_csv(cfg) == adialin.sweep_csv(cfg)
    with pytest.raises(ValueError):
        adialin.run_sweep(json.dumps({"bogus": 1}))


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        adialin.generate_instance(3, 10.0, 0)
    with pytest.raises(ValueError):
        adialin.solve(adialin.generate_instance(2, 10.0, 0), 10, engine="gpu")
