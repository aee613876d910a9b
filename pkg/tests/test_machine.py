import pytest
from hypothesis import given, strategies as st

from qccdlab.machine import (DEFAULT_CONFIG, DeviceParams, Topology, default_params, dump_config,
                             gate_error, linear_topology, load_config, single_trap, swap_error)


def test_linear_topology_shapes():
    t = linear_topology(4, 3)
    assert (t.n_traps, t.n_segments, t.total_slots) == (4, 3, 12)
    assert linear_topology(1, 41).n_segments == 0
    ten = linear_topology(10, 3)
    assert ten.total_slots == 30 and ten.usable_slots == 20


@pytest.mark.parametrize("traps, cap", [(0, 3), (3, 1), (-1, 5)])
def test_bad_topologies_rejected(traps, cap):
    with pytest.raises(ValueError):
        linear_topology(traps, cap)


def test_segment_between_adjacent_only():
    t = linear_topology(4, 3)
    assert t.segment_between(1, 2) == t.segment_between(2, 1) == 1
    with pytest.raises(ValueError):
        t.segment_between(0, 2)


def test_single_trap_holds_everything_plus_a_slot():
    t = single_trap(40)
    assert (t.n_traps, t.capacity) == (1, 41)


@pytest.mark.parametrize("eps0, gamma, L, expected", [
    (1e-3, 0.0, 40, 1e-3),
    (1e-3, 0.05, 2, 1e-3),
    (1e-3, 0.05, 12, 1.5e-3),
    (1e-3, 0.05, 1, 1e-3),
])
def test_gate_error_examples(eps0, gamma, L, expected):
    assert gate_error(DeviceParams(eps_2q0=eps0, gamma=gamma), L) == pytest.approx(expected)


def test_swap_error_is_scaled_and_clamped():
    p = DeviceParams(eps_2q0=1e-3, gamma=0.0, swap_error_ratio=3.0)
    assert swap_error(p, 2) == pytest.approx(3e-3)
    huge = DeviceParams(eps_2q0=0.5, gamma=1.0, swap_error_ratio=10.0)
    assert swap_error(huge, 30) < 1.0


@given(st.floats(0, 0.01), st.floats(0, 1), st.floats(1, 5), st.integers(1, 60))
def test_error_monotone_in_length_and_gamma(eps0, gamma, r, L):
    p = DeviceParams(eps_2q0=eps0, gamma=gamma, swap_error_ratio=r)
    assert gate_error(p, L + 1) >= gate_error(p, L)
    assert gate_error(p.with_(gamma=gamma + 0.1), L) >= gate_error(p, L)
    assert swap_error(p, L) >= gate_error(p, L)


@pytest.mark.parametrize("field, value", [
    ("t_2q", 0.0), ("T2", -1.0), ("eps_2q0", 1.0), ("swap_error_ratio", 0.5),
    ("f_hop", 0.0), ("gamma", -0.1),
])
def test_invalid_params_rejected(field, value):
    with pytest.raises(ValueError):
        DeviceParams(**{field: value})


def test_stock_defaults():
    p = DeviceParams()
    assert (p.eps_2q0, p.gamma, p.swap_error_ratio, p.T2) == (1e-3, 0.05, 3.0, 1000.0)
    assert (p.t_2q, p.t_swap, p.t_split, p.t_merge, p.t_hop) == (100, 100, 80, 80, 20)
    assert p.T2_us == 1e6


def test_config_round_trip(tmp_path):
    p = DeviceParams(gamma=0.2, T2=500.0)
    path = tmp_path / "dev.ini"
    path.write_text(dump_config(p, linear_topology(5, 4)))
    params, top = load_config(path)
    assert params == p and top == linear_topology(5, 4)


def test_partial_config_falls_back_to_field_defaults(tmp_path):
    path = tmp_path / "dev.ini"
    path.write_text("[device]\ngamma = 0.1\n")
    params, top = load_config(path)
    assert params == DeviceParams(gamma=0.1) and top is None


@pytest.mark.parametrize("text", ["[device]\nbogus = 1\n", "[weird]\n",
                                  "[topology]\nn_traps = 2\nshape = ring\n"])
def test_unknown_config_keys_rejected(tmp_path, text):
    path = tmp_path / "dev.ini"
    path.write_text(text)
    with pytest.raises(ValueError):
        load_config(path)


def test_checked_in_config_loads():
    assert DEFAULT_CONFIG.exists()
    assert default_params() == load_config()[0]
    assert isinstance(default_params(), DeviceParams)


def test_topology_describe():
    assert Topology(3, 5).describe() == "linear3x5"
