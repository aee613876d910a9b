"""Experiment harness: single runs, movement and trap-count sweeps, benchmark table.

CSV columns (fixed order):

    sweep-movement: n_qubits, movement_pct, T2_ms, swap_error_ratio, n_traps,
                    fidelity, coherence, exec_time_us, swap_count, hop_count,
                    mode, seed, capacity, split_count, merge_count, gate_count,
                    raw_fidelity
    sweep-traps:    algorithm, n_qubits, n_traps, capacity, T2_ms,
                    swap_error_ratio, fidelity, coherence, exec_time_us,
                    swap_count, hop_count, mode, split_count, merge_count,
                    gate_count, raw_fidelity
    trap summary:   algorithm, n_qubits, T2_ms, swap_error_ratio, opt_traps,
                    max_traps, delta_f_pct, f_opt, f_sequential

``mode`` is ``parallel`` or ``sequential``; sequential rows are the
single-trap baseline that every parallel configuration is compared with.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import csv
import io
import json
import math

from .circuit import Circuit, stats
from .compiler import PLACEMENTS, ROUTERS, RoutingError, validate_schedule
from .compiler.schedule import Schedule
from .generators import GENERATORS, BenchSpec, random_parallel
from .machine import DeviceParams, default_params, Topology, linear_topology, single_trap
from .noise import FidelityReport, delta_f, evaluate_many

MOVEMENT_COLUMNS = [
    "n_qubits", "movement_pct", "T2_ms", "swap_error_ratio", "n_traps",
    "fidelity", "coherence", "exec_time_us", "swap_count", "hop_count",
    "mode", "seed", "capacity", "split_count", "merge_count", "gate_count", "raw_fidelity",
]
TRAP_COLUMNS = [
    "algorithm", "n_qubits", "n_traps", "capacity", "T2_ms", "swap_error_ratio",
    "fidelity", "coherence", "exec_time_us", "swap_count", "hop_count",
    "mode", "split_count", "merge_count", "gate_count", "raw_fidelity",
]
SUMMARY_COLUMNS = [
    "algorithm", "n_qubits", "T2_ms", "swap_error_ratio", "opt_traps", "max_traps",
    "delta_f_pct", "f_opt", "f_sequential",
]
BENCH_ALGORITHMS = (("CA", "cuccaro"), ("DA", "draper"), ("QAOA", "qaoa"), ("QFT", "qft"))


class ValidationFailure(RuntimeError):
    pass


def compile_circuit(circuit: Circuit, topology: Topology, params: DeviceParams,
                    router: str = "greedy", placement: str = "sta",
                    lookahead: int = 20, overlap_moves: bool = True) -> Schedule:
    """Placement, routing and replay validation; raises on any violation."""
    place = PLACEMENTS[placement](circuit, topology)
    if router == "greedy":
        schedule = ROUTERS["greedy"](circuit, place, topology, params, lookahead_window=lookahead)
    elif router == "naive":
        schedule = ROUTERS["naive"](circuit, place, topology, params, overlap_moves=overlap_moves)
    else:
        raise ValueError(f"unknown router {router!r}")
    problems = validate_schedule(schedule, circuit, topology)
    if problems:
        raise ValidationFailure(f"{router} schedule for {circuit.name or 'circuit'} on "
                                f"{topology.describe()}: " + "; ".join(problems[:5]))
    return schedule


def run_one(circuit: Circuit, topology: Topology, params: DeviceParams,
            router: str = "greedy", placement: str = "sta", lookahead: int = 20,
            overlap_moves: bool = True, coherence_mode: str = "global") -> FidelityReport:
    schedule = compile_circuit(circuit, topology, params, router, placement,
                               lookahead, overlap_moves)
    return evaluate_many(schedule, [params], coherence_mode)[0]


def sequential_topology(n_qubits: int) -> Topology:
    return single_trap(n_qubits)


def trap_capacity(n_qubits: int, n_traps: int) -> int:
    """Capacity that holds the qubits evenly plus one free slot per trap."""
    return math.ceil(n_qubits / n_traps) + 1


@dataclass(frozen=True)
class SweepSpec:
    benchmark: tuple[str, ...] = ("random",)
    qubit_counts: tuple[int, ...] = (40,)
    movement_pcts: tuple[float, ...] = tuple(range(0, 101, 10))
    T2s: tuple[float, ...] | None = None
    trap_counts: tuple[int, ...] | None = None
    swap_ratios: tuple[float, ...] | None = None
    seeds: tuple[int, ...] = (0,)
    router: str = "naive"
    placement: str = "paired"
    lookahead: int = 20
    overlap_moves: bool = True
    workers: int = 1
    params: DeviceParams = field(default_factory=default_params)

    def __post_init__(self):
        # unset grids fall back to the single value carried by ``params``
        if self.T2s is None:
            object.__setattr__(self, "T2s", (self.params.T2,))
        if self.swap_ratios is None:
            object.__setattr__(self, "swap_ratios", (self.params.swap_error_ratio,))

    def check(self) -> None:
        for name in ("benchmark", "qubit_counts", "movement_pcts", "T2s", "swap_ratios", "seeds"):
            if not getattr(self, name):
                raise ValueError(f"sweep grid {name!r} is empty")
        if self.trap_counts is not None and not self.trap_counts:
            raise ValueError("sweep grid 'trap_counts' is empty")
        if any(t <= 0 for t in self.T2s):
            raise ValueError("T2 values must be positive")
        if any(r < 1 for r in self.swap_ratios):
            raise ValueError("swap error ratios must be >= 1")
        for n in self.qubit_counts:
            for t in self.traps_for(n):
                # constant physical slot budget: every trap count must fit the qubits
                if t * (trap_capacity(n, t) - 1) < n:
                    raise ValueError(f"{t} traps cannot hold {n} qubits")

    def traps_for(self, n_qubits: int) -> tuple[int, ...]:
        if self.trap_counts is not None:
            return tuple(t for t in self.trap_counts if 1 <= t <= n_qubits)
        return tuple(range(2, n_qubits // 2 + 1))

    def param_grid(self) -> list[tuple[float, float, DeviceParams]]:
        return [(r, T2, self.params.with_(swap_error_ratio=r, T2=T2))
                for r in self.swap_ratios for T2 in self.T2s]


def _map(fn, jobs, workers: int):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs))
    return [fn(job) for job in jobs]


def _report_fields(rep: FidelityReport) -> dict:
    return {
        "fidelity": rep.fidelity, "coherence": rep.coherence, "exec_time_us": rep.exec_time_us,
        "swap_count": rep.swap_count, "hop_count": rep.hop_count, "split_count": rep.split_count,
        "merge_count": rep.merge_count, "gate_count": rep.gate_count,
        "raw_fidelity": rep.raw_fidelity,
    }


# -- movement sweep ------------------------------------------------------------

def _movement_job(job):
    spec, n, pct, seed = job
    circuit = random_parallel(BenchSpec(n, pct, seed))
    grid = spec.param_grid()
    par_top = linear_topology(n // 2, 3)
    seq_top = sequential_topology(n)
    par = compile_circuit(circuit, par_top, spec.params, spec.router, spec.placement,
                          spec.lookahead, spec.overlap_moves)
    seq = compile_circuit(circuit, seq_top, spec.params, "greedy", "sta", spec.lookahead)
    par_reps = evaluate_many(par, [p for _, _, p in grid])
    seq_reps = evaluate_many(seq, [p for _, _, p in grid])
    rows = []
    for (r, T2, _), pr, sr in zip(grid, par_reps, seq_reps):
        for mode, top, rep in (("parallel", par_top, pr), ("sequential", seq_top, sr)):
            rows.append({"n_qubits": n, "movement_pct": pct, "T2_ms": T2,
                         "swap_error_ratio": r, "n_traps": top.n_traps, "mode": mode,
                         "seed": seed, "capacity": top.capacity, **_report_fields(rep)})
    return rows


def sweep_movement(spec: SweepSpec) -> list[dict]:
    """Fidelity of the fully parallel random benchmarks versus movement percentage.

    Parallel runs use n/2 traps of capacity 3 (two ions plus a free slot);
    each configuration is followed by its single-trap sequential baseline.
    """
    spec.check()
    jobs = [(spec, n, pct, seed) for n in spec.qubit_counts
            for pct in spec.movement_pcts for seed in spec.seeds]
    return [row for rows in _map(_movement_job, jobs, spec.workers) for row in rows]


def crossover_pct(rows: list[dict], n_qubits: int | None = None, T2: float | None = None,
                  swap_ratio: float | None = None, seed: int | None = None) -> float | None:
    """Largest movement percentage at which parallel beats sequential."""
    best = None
    par = {}
    seq = {}
    for row in rows:
        if n_qubits is not None and row["n_qubits"] != n_qubits:
            continue
        if T2 is not None and row["T2_ms"] != T2:
            continue
        if swap_ratio is not None and row["swap_error_ratio"] != swap_ratio:
            continue
        if seed is not None and row["seed"] != seed:
            continue
        key = (row["n_qubits"], row["movement_pct"], row["T2_ms"],
               row["swap_error_ratio"], row["seed"])
        (par if row["mode"] == "parallel" else seq)[key] = row["fidelity"]
    for key, f in par.items():
        if f > seq[key] and (best is None or key[1] > best):
            best = key[1]
    return best


# -- trap-count sweep ------------------------------------------------------------

def _trap_job(job):
    spec, algorithm, n, n_traps = job
    circuit = GENERATORS[algorithm](n)
    top = sequential_topology(n) if n_traps == 1 else linear_topology(n_traps, trap_capacity(n, n_traps))
    schedule = compile_circuit(circuit, top, spec.params, spec.router, spec.placement,
                               spec.lookahead, spec.overlap_moves)
    grid = spec.param_grid()
    reps = evaluate_many(schedule, [p for _, _, p in grid])
    mode = "sequential" if n_traps == 1 else "parallel"
    return [{"algorithm": algorithm, "n_qubits": n, "n_traps": top.n_traps,
             "capacity": top.capacity, "T2_ms": T2, "swap_error_ratio": r, "mode": mode,
             **_report_fields(rep)} for (r, T2, _), rep in zip(grid, reps)]


def sweep_traps(spec: SweepSpec) -> tuple[list[dict], list[dict]]:
    """Fidelity versus trap count for the structured algorithms.

    The physical slot budget is kept matched to the qubit count: a device
    with T traps has capacity ceil(n / T) + 1. Each (algorithm, n) block
    starts with its single-trap sequential row.
    """
    spec.check()
    jobs = []
    for algorithm in spec.benchmark:
        if algorithm not in GENERATORS:
            raise ValueError(f"unknown algorithm {algorithm!r}")
        for n in spec.qubit_counts:
            jobs.append((spec, algorithm, n, 1))
            jobs += [(spec, algorithm, n, t) for t in spec.traps_for(n) if t > 1]
    rows = [row for rows in _map(_trap_job, jobs, spec.workers) for row in rows]
    return rows, summarize_traps(rows)


def summarize_traps(rows: list[dict]) -> list[dict]:
    groups: dict[tuple, dict] = {}
    for row in rows:
        key = (row["algorithm"], row["n_qubits"], row["T2_ms"], row["swap_error_ratio"])
        g = groups.setdefault(key, {"seq": None, "par": []})
        if row["mode"] == "sequential":
            g["seq"] = row["fidelity"]
        else:
            g["par"].append((row["n_traps"], row["fidelity"]))
    out = []
    for (algorithm, n, T2, r), g in groups.items():
        f_seq = g["seq"]
        par = sorted(g["par"])
        if not par:
            continue
        opt_t, f_opt = min(par, key=lambda tf: (-tf[1], tf[0]))
        winners = [t for t, f in par if f_seq is not None and f > f_seq]
        out.append({
            "algorithm": algorithm, "n_qubits": n, "T2_ms": T2, "swap_error_ratio": r,
            "opt_traps": opt_t, "max_traps": max(winners) if winners else None,
            "delta_f_pct": delta_f(f_opt, f_seq) if f_seq else None,
            "f_opt": f_opt, "f_sequential": f_seq,
        })
    return out


# -- benchmark table ---------------------------------------------------------------

def emit_bench_table(n_qubits: int = 40) -> list[dict]:
    rows = []
    for label, key in BENCH_ALGORITHMS:
        s = stats(GENERATORS[key](n_qubits))
        rows.append({"algorithm": label, "depth": s.depth, "two_qubit_gates": s.two_qubit_gate_count,
                     "avg_2q_gates_per_ts": s.avg_gates_per_ts,
                     "avg_shuttle_per_ts": s.avg_ion_mov_per_ts})
    return rows


def format_bench_table(rows: list[dict]) -> str:
    lines = [f"{'':6}{'Depth':>7}{'2q Gates':>10}{'Av. 2q-Gates/TS':>17}{'Av. Shuttle/TS':>16}"]
    for r in rows:
        lines.append(f"{r['algorithm']:6}{r['depth']:>7}{r['two_qubit_gates']:>10}"
                     f"{r['avg_2q_gates_per_ts']:>17.2f}{r['avg_shuttle_per_ts']:>16.2f}")
    return "\n".join(lines) + "\n"


# -- serialisation -------------------------------------------------------------------

def to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in columns})
    return buf.getvalue()


def to_json(rows: list[dict], columns: list[str]) -> str:
    return json.dumps([{k: row.get(k) for k in columns} for row in rows], indent=1) + "\n"
