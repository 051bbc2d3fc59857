"""Smoke tests for the python bindings."""

import math

import pytest

import parityforge as pf


def test_reed_muller_basics():
    g = pf.rm_generator(1, 4)
    assert g.n_rows == 5
    assert g.n_cols == 16
    assert pf.gf2_rank(g) == 5
    assert pf.rm_dimension(2, 4) == 11
    assert pf.check_duality(1, 4)


def test_shortened_code():
    code = pf.shortened_qrm(4)
    assert code.n == 15
    assert code.d_x == 7
    assert code.d_z == 3


def test_layout_and_verification():
    layout = pf.make_layout(4, nearest_neighbour=False)
    report = pf.verify_all(layout)
    assert report["all_passed"]
    assert pf.logical_distance(layout, 0) == 8
    assert pf.transversal_phase_check(4, 2)

    nn = pf.make_layout(6, target="repetition")
    assert nn.n_qubits == pf.n_qubits(4, "nn") + 31 + 31  # chain qubits and their checks


def test_analytics_reference_point():
    assert pf.p_eff(2) == pytest.approx(1.0001e-3, rel=1e-9)
    assert pf.p_dist(2) == pytest.approx(3.501e-8, rel=1e-3)
    assert pf.break_even(1e-3) == pytest.approx(6.61, abs=0.01)
    assert pf.n_data(4) == 84
    assert pf.factory_capacity(4, 2) == 4


def test_simulation_zero_noise():
    layout = pf.make_layout(4, nearest_neighbour=False)
    result = pf.simulate(layout, 2, p=0.0, eta=math.inf, shots=4096, seed=7)
    assert result["p_accept"] == 1.0
    assert result["p_logical"] == 0.0


def test_synthesis_exact_t():
    table = pf.enumerate_blocks("C2", 8.0)
    res = pf.synthesize(pf.Unitary2.z_rotation(2), table, 1.0, backend="exhaustive")
    assert res["eps"] < 1e-12
    assert res["word"] == ["T"]
    assert pf.trace_distance(pf.Unitary2.z_rotation(2), pf.Unitary2.z_rotation(2)) == 0.0
