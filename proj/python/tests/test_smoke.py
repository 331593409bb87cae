import math

import pytest

import timeflip as tf


def test_canonical_sets():
    pairs = tf.canonical_sets()
    assert len(pairs) == 21
    labels = [p["label"] for p in pairs]
    assert labels.count("plus") == 13
    assert labels.count("minus") == 8


def test_classify_pair():
    i2 = [[1, 0], [0, 1]]
    y = [[0, -1j], [1j, 0]]
    assert tf.classify_pair(i2, i2) == "plus"
    assert tf.classify_pair(y, i2) == "minus"


def test_noiseless_strategy_wins_every_setting():
    for p in tf.canonical_sets():
        p_plus, p_minus = tf.play_setting(p["u"], p["v"])
        won = p_plus if p["label"] == "plus" else p_minus
        assert abs(won - 1.0) < 1e-12


def test_noise_model():
    assert tf.analytic_win_probability(0.989, 0.0, 0.0) == pytest.approx(0.9945)
    u = [[1, 0], [0, 1]]
    p_plus, _ = tf.play_setting(u, u, visibility=0.989)
    assert p_plus == pytest.approx(0.9945, abs=1e-12)


def test_pvalue_numbers():
    d = tf.relative_entropy(994512 / 1e6, 0.92)
    assert d == pytest.approx(0.0627, abs=5e-4)
    assert tf.chernoff_log_pvalue_bound(994512, 10**6, 0.92) <= -1e4
    assert tf.exact_binomial_tail_log(10, 10, 0.5) == pytest.approx(-10 * math.log(2))


def test_gadget_transpose():
    elements = [(0.3, math.pi / 2), (-0.7, math.pi), (0.1, math.pi / 2)]
    fwd, bwd = tf.gadget_unitaries(elements, convention="transpose")
    for i in range(2):
        for j in range(2):
            assert bwd[i][j] == pytest.approx(fwd[j][i], abs=1e-13)


def test_gadget_decompose_roundtrip():
    x = [[0, 1], [1, 0]]
    elems = tf.decompose_gadget(x)
    assert len(elems) == 3
    fwd, _ = tf.gadget_unitaries([(e["theta"], e["retardance"]) for e in elems])
    # reconstruction up to a global phase: |tr(fwd^dag X)| = 2
    tr = sum(fwd[i][j].conjugate() * x[i][j] for i in range(2) for j in range(2))
    assert abs(tr) == pytest.approx(2.0, abs=1e-10)


def test_average_gate_fidelity_closed_form():
    i2 = [[1, 0], [0, 1]]
    x = [[0, 1], [1, 0]]
    rep = tf.average_gate_fidelity(i2, x, samples=2000, seed=5)
    assert rep["closed_form"] == pytest.approx(1 / 3)
    assert abs(rep["mean"] - rep["closed_form"]) < 3 * rep["std_err"] + 1e-12


def test_solve_parallel_bound():
    r = tf.solve_bounds("parallel", tol=1e-6)
    assert 0.88 <= r["value"] <= 0.89
    assert abs(r["gap"]) < 1e-5


def test_seeded_game_reproducible():
    a = tf.run_game(5000, visibility=0.9, seed=11)
    b = tf.run_game(5000, visibility=0.9, seed=11)
    assert a == b
    assert a["n_rounds"] == 5000
    assert 0.9 < a["win_rate"] <= 1.0
