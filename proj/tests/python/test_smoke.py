import math

import pytest

import qcurl


def test_lambert_identity():
    for z in [-1.0 / math.e, -0.2, 0.0, 1.0, math.e, 10.0]:
        w = qcurl.lambert_w0(z)
        assert abs(w * math.exp(w) - z) <= 1e-12 * max(1.0, abs(z))
    assert qcurl.lambert_w0(0.0) == 0.0
    with pytest.raises(Exception):
        qcurl.lambert_w0(-1.0)


def test_sample_weights():
    assert qcurl.sample_weight(0.5, 0.5, 1.0) == pytest.approx(0.0)
    ws = qcurl.sample_weights([0.1, 0.5, 0.9], 0.5, 1.0)
    assert ws[0] > ws[1] > ws[2]
    assert qcurl.weighted_risk([0.5], 0.5, 1.0) == pytest.approx(0.0)


def test_haar_state_and_fidelity():
    a = qcurl.haar_state(3, seed=1)
    b = qcurl.haar_state(3, seed=2)
    assert len(a) == 8
    assert sum(abs(x) ** 2 for x in a) == pytest.approx(1.0)
    assert qcurl.fidelity(a, a) == pytest.approx(1.0)
    assert 0.0 <= qcurl.fidelity(a, b) < 1.0
    assert qcurl.haar_state(3, seed=1) == a


def test_circuits():
    c = qcurl.hea(3, 2)
    assert c.num_qubits == 3
    assert c.num_params == 2 * 3 * (2 + 1)
    u = c.unitary([0.1] * c.num_params)
    assert len(u) == 8

    zero = [1.0 + 0.0j] + [0.0j] * 7
    applied = c.apply([0.1] * c.num_params, zero)
    via_u = [row[0] for row in u]
    assert max(abs(x - y) for x, y in zip(applied, via_u)) < 1e-12

    assert qcurl.hs_distance(u, u) == pytest.approx(0.0, abs=1e-12)

    qc, readout = qcurl.qcnn(4)
    assert qc.num_params == 45
    assert readout == 3

    tc, tp = qcurl.xy_target(2, 3, 1, beta_seed=5, fixed_seed=6)
    assert len(tp) == tc.num_params
    assert "qubits" in tc.text()


def test_cluster_ising():
    gs = qcurl.ground_state(2, 0.7, 0.3)
    assert gs["energy"] == pytest.approx(-2 * 0.7 - 0.3, abs=1e-10)

    cluster = qcurl.ground_state(6, 0.0, 0.0, periodic=True)
    assert qcurl.string_order(cluster["amplitudes"]) == pytest.approx(1.0, abs=1e-6)
    assert qcurl.string_order_label(cluster["amplitudes"]) == 1
    assert qcurl.analytic_label(0.5, 0.0) == 1
    assert qcurl.analytic_label(1.5, 0.0) == 0


def test_bce_loss():
    assert qcurl.bce_loss(0.0, 1, mu=1.0) == pytest.approx(math.log(2.0))
    assert qcurl.bce_loss(5.0, 1, mu=2.0) < qcurl.bce_loss(-5.0, 1, mu=2.0)


def test_curriculum_weights():
    out = qcurl.curriculum_weights(2, [1, 2, 3], 1, 6, lambda_=1e-2, seed=9)
    w = out["weights"]
    assert len(w) == 3 and all(len(row) == 3 for row in w)
    assert all(w[i][i] == 0.0 for i in range(3))
    order = out["greedy_order"]
    assert sorted(order) == [0, 1, 2]
    assert order[-1] == 2


def test_run_experiment(tmp_path):
    out = qcurl.run_experiment(
        "weights",
        {
            "q": "2",
            "l_m": "3",
            "l_f": "2",
            "n": "4",
            "trials": "2",
            "threads": "1",
            "seed": "3",
            "output_dir": str(tmp_path / "w"),
        },
    )
    assert (tmp_path / "w" / "raw.csv").exists()
    assert (tmp_path / "w" / "aggregate.csv").exists()
    assert (tmp_path / "w" / "manifest.txt").exists()
    assert out == str(tmp_path / "w")
    rows = (tmp_path / "w" / "raw.csv").read_text().strip().splitlines()
    assert rows[0] == "trial,L_m,hs_distance,curriculum_weight"
    assert len(rows) == 1 + 2 * 2

    with pytest.raises(Exception):
        qcurl.run_experiment("weights", {"q": "0"})
