"""Acceptance criteria, one test per criterion.

Each test records a verdict in ``conftest.VERDICTS``; the run ends with a
"criterion N: PASS/FAIL" line for each of them.
"""
import math
import random
import subprocess
import sys
import time

import pytest

from conftest import VERDICTS
from oracles import min_relocation_cost, needs_displacement, random_pairs, relocation_cases
from test_compiler import _labelled

from qccdlab.circuit import Circuit, stats
from qccdlab.compiler import (MachineState, movement_cost, paired_placement, plan_move,
                              route_greedy_minmove, route_naive_parallel, sta_placement,
                              validate_schedule)
from qccdlab.experiments import (MOVEMENT_COLUMNS, SweepSpec, crossover_pct, emit_bench_table,
                                 sweep_movement, sweep_traps)
from qccdlab.generators import GENERATORS, BenchSpec, random_parallel
from qccdlab.machine import DeviceParams, default_params, linear_topology, single_trap
from qccdlab.noise import coherence


def verdict(key, ok, detail):
    VERDICTS[key] = (bool(ok), detail)
    print(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def within(value, target, rel):
    return abs(value - target) <= rel * target


# 1 -------------------------------------------------------------------------------

def test_c1_benchmark_table():
    rows = {r["algorithm"]: r for r in emit_bench_table(40)}
    fails = []
    for name in ("QFT", "QAOA"):
        r = rows[name]
        if (r["depth"], r["two_qubit_gates"]) != (77, 780) \
                or abs(r["avg_2q_gates_per_ts"] - 10.13) > 0.01 \
                or abs(r["avg_shuttle_per_ts"] - 19.74) > 0.01:
            fails.append(name)
    da = rows["DA"]
    if da["two_qubit_gates"] != 590 or not within(da["depth"], 113, 0.10) \
            or not within(da["avg_shuttle_per_ts"], 9.91, 0.10):
        fails.append("DA")
    ca = rows["CA"]
    if not (within(ca["depth"], 283, 0.10) and within(ca["two_qubit_gates"], 321, 0.10)
            and within(ca["avg_2q_gates_per_ts"], 1.13, 0.15)
            and within(ca["avg_shuttle_per_ts"], 1.28, 0.20)):
        fails.append("CA")
    summary = "; ".join(f"{k} {r['depth']}/{r['two_qubit_gates']}/{r['avg_2q_gates_per_ts']:.2f}/"
                        f"{r['avg_shuttle_per_ts']:.2f}" for k, r in rows.items())
    verdict("1", not fails, summary + (f"  (out of tolerance: {fails})" if fails else ""))


# 2 -------------------------------------------------------------------------------

def test_c2_coherence_closed_forms():
    cases = [(coherence(0, 500), 1.0), (coherence(700, 700), math.exp(-1)),
             (coherence(200, 1000), math.exp(-0.2))]
    worst = max(abs(got - want) / want for got, want in cases)
    verdict("2", worst <= 1e-12, f"max relative error {worst:.1e}")


# 3 -------------------------------------------------------------------------------

def test_c3_movement_average_consistency():
    rng = random.Random(2024)
    bad = 0
    for _ in range(1200):
        n = rng.randrange(2, 16)
        s = stats(Circuit.from_pairs(n, random_pairs(rng, n, rng.randrange(0, 60))))
        total = sum(s.per_qubit_movements)
        if s.depth == 0:
            ok = s.avg_ion_mov_per_ts == 0 and total == 0
        else:
            ok = s.avg_ion_mov_per_ts == total / s.depth and round(s.avg_ion_mov_per_ts * s.depth) == total
        bad += not ok
    verdict("3", bad == 0, f"1200 random circuits, {bad} inconsistent")


# 4 -------------------------------------------------------------------------------

def test_c4_zero_movement_law():
    p = DeviceParams()
    bad = []
    for n in range(4, 41, 2):
        circ = random_parallel(BenchSpec(n, 0, n))
        top = linear_topology(n // 2, 3)
        s = route_naive_parallel(circ, paired_placement(circ, top), top, p)
        if s.movement_events or s.makespan != n * p.t_2q or validate_schedule(s):
            bad.append(n)
    verdict("4", not bad, f"even n in [4, 40]; violations at {bad or 'none'}")


# 5 -------------------------------------------------------------------------------

def test_c5_sequential_baseline_law():
    p = DeviceParams()
    details, ok = [], True
    for name in ("qft", "qaoa", "draper", "cuccaro"):
        circ = GENERATORS[name](40)
        top = single_trap(40)
        s = route_greedy_minmove(circ, sta_placement(circ, top), top, p)
        good = (s.movement_events == 0 and s.makespan == len(circ.gates) * p.t_2q
                and not validate_schedule(s))
        ok &= good
        details.append(f"{name} {'ok' if good else 'BAD'}")
    verdict("5", ok, ", ".join(details))


# 6 -------------------------------------------------------------------------------

def _random_config(rng):
    n = rng.randrange(2, 17)
    kind = rng.choice(["pairs", "random", "qft", "cuccaro", "draper"])
    if kind == "random" and n % 2 == 0:
        circ = random_parallel(BenchSpec(n, rng.choice(range(0, 101, 10)), rng.randrange(1000)))
    elif kind == "qft":
        circ = GENERATORS["qft"](n)
    elif kind == "cuccaro" and n >= 4 and n % 2 == 0:
        circ = GENERATORS["cuccaro"](n)
    elif kind == "draper" and n >= 4 and n % 2 == 0:
        circ = GENERATORS["draper"](n)
    else:
        circ = Circuit.from_pairs(n, random_pairs(rng, n, rng.randrange(1, 40)))
    n_traps = rng.randrange(1, max(2, n // 2) + 1)
    cap = max(3, -(-n // n_traps) + 1) + rng.randrange(0, 2)
    return circ, linear_topology(n_traps, cap)


def test_c6_replay_validation():
    rng = random.Random(6)
    p = DeviceParams()
    failures = []
    for i in range(1000):
        circ, top = _random_config(rng)
        router = rng.choice(["naive", "naive-serial", "greedy"])
        place = sta_placement(circ, top)
        if router == "greedy":
            s = route_greedy_minmove(circ, place, top, p, lookahead_window=rng.randrange(1, 40))
        else:
            s = route_naive_parallel(circ, place, top, p, overlap_moves=router == "naive")
        problems = validate_schedule(s, circ, top)
        if problems:
            failures.append((i, router, top.describe(), problems[0]))
    verdict("6", not failures, f"1000 configurations, {len(failures)} invalid"
            + (f": first {failures[0]}" if failures else ""))


# 7 -------------------------------------------------------------------------------

def test_c7_relocation_optimality():
    start = time.perf_counter()
    checked, wrong = 0, []
    for chains, src, dest, cap in relocation_cases(max_traps=4, capacities=(2, 3)):
        if needs_displacement(chains, src, dest, cap):
            continue
        got = movement_cost(plan_move(MachineState(_labelled(chains), cap), 0, dest))
        best = min_relocation_cost(chains, dest, cap)
        checked += 1
        if got != best:
            wrong.append((chains, dest, cap, got, best))
    elapsed = time.perf_counter() - start
    verdict("7", not wrong and elapsed < 60,
            f"{checked} single-ion relocations on <=4 traps, cap<=3: {len(wrong)} suboptimal, "
            f"{elapsed:.1f}s")


# 8 and 9 share one movement sweep -------------------------------------------------

@pytest.fixture(scope="module")
def movement_rows():
    spec = SweepSpec(qubit_counts=(8, 20, 40), seeds=(0, 1, 2), swap_ratios=(1.0, 2.0, 3.0))
    return sweep_movement(spec)


def test_c8_monotone_in_movement_and_swap_ratio(movement_rows):
    par = {(r["n_qubits"], r["seed"], r["swap_error_ratio"], r["movement_pct"]): r["fidelity"]
           for r in movement_rows if r["mode"] == "parallel"}
    pcts = sorted({k[3] for k in par})
    bad = []
    for n in (8, 20, 40):
        for seed in (0, 1, 2):
            for r in (1.0, 2.0, 3.0):
                f = [par[n, seed, r, p] for p in pcts]
                if any(b > a for a, b in zip(f, f[1:])):
                    bad.append(("pct", n, seed, r))
            for p in pcts:
                f = [par[n, seed, r, p] for r in (1.0, 2.0, 3.0)]
                if any(b > a for a, b in zip(f, f[1:])):
                    bad.append(("ratio", n, seed, p))
    verdict("8", not bad, f"n in (8, 20, 40), 3 seeds, r in (1, 2, 3): "
            f"{len(bad)} non-monotone series" + (f", first {bad[0]}" if bad else ""))


def _crossovers(rows, n):
    r = default_params().swap_error_ratio
    return [crossover_pct(rows, n, swap_ratio=r, seed=s) for s in (0, 1, 2)]


def test_c9a_crossover_at_forty_qubits(movement_rows):
    xs = _crossovers(movement_rows, 40)
    ok = all(x is not None and 10 <= x <= 30 for x in xs)
    verdict("9a", ok, f"n=40 largest p with parallel > sequential, seeds 0-2: {xs} (want 10..30)")


def test_c9b_sequential_wins_at_eight_qubits(movement_rows):
    """Fails with the frozen config; see the README section on known limitations."""
    xs = _crossovers(movement_rows, 8)
    ok = all(x is None for x in xs)
    verdict("9b", ok, f"n=8 largest p with parallel > sequential, seeds 0-2: {xs} (want none)")


# 10 ------------------------------------------------------------------------------

def test_c10_trap_sweep_trends():
    start = time.perf_counter()
    rows, summary = sweep_traps(SweepSpec(benchmark=("cuccaro", "draper", "qaoa", "qft"),
                                          qubit_counts=(20, 40, 50), router="greedy",
                                          placement="sta"))
    elapsed = time.perf_counter() - start
    s = {(r["algorithm"], r["n_qubits"]): r for r in summary}
    problems = []
    for alg in ("cuccaro", "draper", "qaoa", "qft"):
        d = [s[alg, n]["delta_f_pct"] for n in (20, 40, 50)]
        if not d[0] < d[1] < d[2]:
            problems.append(f"{alg}: dF not increasing {d}")
        if not (d[1] > 0 and d[2] > 0):
            problems.append(f"{alg}: dF not positive at 40/50")
        if s[alg, 50]["opt_traps"] < s[alg, 20]["opt_traps"]:
            problems.append(f"{alg}: opt traps shrink")
    strip = lambda alg: [{k: v for k, v in r.items() if k != "algorithm"}
                         for r in rows if r["algorithm"] == alg]
    if strip("qft") != strip("qaoa"):
        problems.append("qft and qaoa sweeps differ")
    if elapsed > 600:
        problems.append(f"took {elapsed:.0f}s")
    table = ", ".join(f"{a}/{n}: opt {s[a, n]['opt_traps']} dF {s[a, n]['delta_f_pct']:+.1f}%"
                      for a in ("cuccaro", "draper", "qft") for n in (20, 40, 50))
    verdict("10", not problems, f"{elapsed:.0f}s; {table}" + (f"; {problems}" if problems else ""))


# 11 ------------------------------------------------------------------------------

def test_c11_cli_determinism(tmp_path):
    commands = [
        ["sweep-movement", "--qubits", "8,20", "--movement-pcts", "0:100:20", "--seeds", "0,1",
         "--swap-ratios", "1,3"],
        ["sweep-traps", "--qubits", "12,20", "--algorithms", "cuccaro,qft"],
    ]
    same = []
    for cmd in commands:
        outs = []
        for i in range(2):
            path = tmp_path / f"{cmd[0]}_{i}.csv"
            subprocess.run([sys.executable, "-m", "qccdlab", *cmd, "--out", str(path)],
                           check=True, capture_output=True)
            outs.append(path.read_bytes())
        same.append(outs[0] == outs[1] and len(outs[0]) > 0)
    verdict("11", all(same), f"byte-identical CSV: sweep-movement {same[0]}, sweep-traps {same[1]}")
