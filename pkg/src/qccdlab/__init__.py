"""Compiler and cost simulator for linear trapped-ion QCCD devices.

Typical use::

    from qccdlab import qft, linear_topology, default_params, run_one
    report = run_one(qft(20), linear_topology(4, 6), default_params())
"""
from .circuit import Circuit, Gate, asap_layering, dumps, loads, partner_change_counts, stats
from .compiler import (PLACEMENTS, ROUTERS, Placement, Schedule, paired_placement, plan_move,
                       route_greedy_minmove, route_naive_parallel, sta_placement,
                       validate_schedule)
from .experiments import (SweepSpec, compile_circuit, emit_bench_table, run_one, sweep_movement,
                          sweep_traps)
from .generators import BenchSpec, cuccaro, draper, qaoa_complete, qft, random_parallel
from .machine import (DeviceParams, Topology, default_params, gate_error, linear_topology,
                      load_config, single_trap, swap_error)
from .noise import FidelityReport, coherence, delta_f, schedule_fidelity

__version__ = "0.1.0"
