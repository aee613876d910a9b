import random

import pytest
from hypothesis import given, settings, strategies as st

from qccdlab.circuit import (Circuit, Gate, asap_layering, dumps, loads, partner_change_counts,
                             stats, validate)
from qccdlab.generators import qft

from oracles import asap_layers_fixpoint, partner_changes, random_pairs


def C(n, pairs):
    return Circuit.from_pairs(n, pairs)


def test_validate_accepts_single_gate():
    assert validate(C(2, [(0, 1)])) == []


def test_validate_reports_every_problem():
    bad = Circuit(4, (Gate(0, 0, 0), Gate(0, 5, 1), Gate(1, 2, 7)))
    problems = validate(bad)
    assert any("self-gate" in p for p in problems)
    assert any("qubit out of range" in p for p in problems)
    assert any("not dense" in p for p in problems)


@pytest.mark.parametrize("pairs, depth", [
    ([(0, 1), (2, 3)], 1),
    ([(0, 1), (1, 2)], 2),
])
def test_layer_counts(pairs, depth):
    assert asap_layering(C(4, pairs)).depth == depth


def test_qft4_layers_by_hand():
    lay = asap_layering(qft(4))
    named = [{qft(4).gates[i].qubits for i in layer} for layer in lay.layers]
    assert named == [{(0, 1)}, {(0, 2)}, {(0, 3), (1, 2)}, {(1, 3)}, {(2, 3)}]


@pytest.mark.parametrize("partners, expected", [([1, 1, 1], 0), ([1, 2, 3], 2), ([2, 1, 2], 2)])
def test_partner_changes_of_one_qubit(partners, expected):
    circ = C(4, [(0, p) for p in partners])
    assert partner_change_counts(circ)[0] == expected


def test_one_gate_stats():
    s = stats(C(2, [(0, 1)]))
    assert (s.depth, s.two_qubit_gate_count, s.avg_gates_per_ts, s.avg_ion_mov_per_ts) == (1, 1, 1.0, 0.0)
    assert s.movement_percentage == 0.0


def test_qft4_stats():
    s = stats(qft(4))
    assert (s.depth, s.two_qubit_gate_count, s.total_movements) == (5, 6, 8)
    assert s.avg_gates_per_ts == pytest.approx(1.2)
    assert s.avg_ion_mov_per_ts == pytest.approx(1.6)


def test_qft40_movement_total():
    assert stats(qft(40)).total_movements == 1520


def test_empty_circuit_stats():
    s = stats(C(3, []))
    assert s.depth == 0 and s.avg_gates_per_ts == 0.0 and s.movement_percentage == 0.0


def test_movement_percentage_alternating_pairs():
    # layers alternate between two perfect matchings: every qubit changes every layer
    a, b = [(0, 1), (2, 3)], [(0, 2), (1, 3)]
    assert stats(C(4, a + b + a + b)).movement_percentage == pytest.approx(100.0)
    assert stats(C(4, a * 4)).movement_percentage == 0.0


# -- text format --------------------------------------------------------------

def test_dump_format():
    text = dumps(Circuit.from_pairs(3, [(0, 1), (2, 1)], label="cx"))
    assert text == "qubits 3\ncx 0 1\ncx 2 1\n"


def test_loads_tolerates_comments_and_whitespace():
    circ = loads("# bell pairs\n\n  qubits   4\ng 0 1   # first\n\tg 2 3\n")
    assert circ.pairs() == [(0, 1), (2, 3)] and circ.n_qubits == 4


@pytest.mark.parametrize("text, msg", [
    ("g 0 1\n", "header"),
    ("qubits 2\ng 0\n", "label a b"),
    ("qubits 2\ng 0 0\n", "self-gate"),
    ("qubits 2\ng 0 3\n", "out of range"),
    ("", "missing"),
])
def test_loads_rejects(text, msg):
    with pytest.raises(ValueError, match=msg):
        loads(text)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 9).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
             .filter(lambda p: p[0] != p[1]), max_size=30),
    st.sampled_from(["g", "cx", "zz"]))))
def test_text_round_trip(case):
    n, pairs, label = case
    circ = Circuit.from_pairs(n, pairs, label=label)
    again = loads(dumps(circ))
    assert again == circ
    assert dumps(again) == dumps(circ)


# -- properties against the reference implementations ---------------------------

@settings(max_examples=150, deadline=None)
@given(st.integers(2, 8), st.integers(0, 25), st.integers(0, 10**6))
def test_layering_matches_fixpoint_oracle(n, n_gates, seed):
    pairs = random_pairs(random.Random(seed), n, n_gates)
    lay = asap_layering(C(n, pairs))
    assert list(lay.layer_of) == asap_layers_fixpoint(n, pairs)
    for layer in lay.layers:
        used = [q for i in layer for q in pairs[i]]
        assert len(used) == len(set(used))
    assert sorted(i for layer in lay.layers for i in layer) == list(range(n_gates))


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 8), st.integers(0, 25), st.integers(0, 10**6))
def test_movement_counts_match_oracle(n, n_gates, seed):
    pairs = random_pairs(random.Random(seed), n, n_gates)
    circ = C(n, pairs)
    moves = partner_change_counts(circ)
    assert moves == partner_changes(n, pairs)
    for q in range(n):
        touching = sum(q in p for p in pairs)
        assert moves[q] <= max(0, touching - 1)
    s = stats(circ)
    assert 0.0 <= s.movement_percentage <= 100.0


def test_stats_deterministic():
    pairs = random_pairs(random.Random(3), 6, 40)
    assert stats(C(6, pairs)) == stats(C(6, list(pairs)))
