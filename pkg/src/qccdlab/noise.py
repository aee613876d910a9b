"""Fidelity and coherence of compiled schedules."""
from __future__ import annotations

from dataclasses import asdict, dataclass
import math

from .compiler.schedule import Schedule
from .compiler.validate import replay
from .machine import DeviceParams, gate_error, swap_error


class InvalidSchedule(ValueError):
    pass


def coherence(t: float, T2: float) -> float:
    """Decoherence factor exp(-t / T2); ``t`` and ``T2`` in the same unit."""
    if T2 <= 0:
        raise ValueError(f"T2 must be positive, got {T2}")
    if t < 0:
        raise ValueError(f"execution time must be non-negative, got {t}")
    return math.exp(-t / T2)


@dataclass(frozen=True)
class FidelityReport:
    fidelity: float
    coherence: float
    raw_fidelity: float
    exec_time_us: float
    gate_count: int
    swap_count: int
    split_count: int
    hop_count: int
    merge_count: int
    topology: str = ""
    router: str = ""

    @property
    def movement_count(self) -> int:
        return self.swap_count + self.split_count + self.hop_count + self.merge_count

    def as_dict(self) -> dict:
        return asdict(self)


def _idle_coherence(schedule: Schedule, T2_us: float) -> float:
    busy: dict[int, float] = {}
    for e in schedule.events:
        for q in e.qubits:
            busy[q] = busy.get(q, 0.0) + e.duration
    n_qubits = schedule.circuit.n_qubits if schedule.circuit else len(busy)
    span = schedule.makespan
    idle = sum(span - busy.get(q, 0.0) for q in range(n_qubits))
    return math.exp(-idle / T2_us)


def _fidelity(schedule: Schedule, occupancy, params: DeviceParams,
              coherence_mode: str) -> FidelityReport:
    log_raw = 0.0
    for e, L in zip(schedule.events, occupancy):
        if e.kind == "gate":
            log_raw += math.log1p(-gate_error(params, L))
        elif e.kind == "swap":
            log_raw += math.log1p(-swap_error(params, L))
        elif e.kind == "hop":
            log_raw += math.log(params.f_hop)
        elif e.kind == "split":
            log_raw += math.log(params.f_split)
        elif e.kind == "merge":
            log_raw += math.log(params.f_merge)
    raw = math.exp(log_raw)
    t = schedule.makespan
    if coherence_mode == "global":
        c = coherence(t, params.T2_us)
    elif coherence_mode == "idle":
        c = _idle_coherence(schedule, params.T2_us)
    else:
        raise ValueError(f"unknown coherence mode {coherence_mode!r}")
    counts = schedule.counts()
    return FidelityReport(
        fidelity=raw * c, coherence=c, raw_fidelity=raw, exec_time_us=t,
        gate_count=counts["gate"], swap_count=counts["swap"], split_count=counts["split"],
        hop_count=counts["hop"], merge_count=counts["merge"],
        topology=schedule.topology.describe(), router=schedule.router)


def evaluate_many(schedule: Schedule, params_list, coherence_mode: str = "global"):
    """Replay once, then evaluate the schedule under each parameter set."""
    rep = replay(schedule)
    if not rep.ok:
        raise InvalidSchedule("; ".join(rep.violations[:5]))
    return [_fidelity(schedule, rep.occupancy, p, coherence_mode) for p in params_list]


def schedule_fidelity(schedule: Schedule, params: DeviceParams,
                      coherence_mode: str = "global") -> FidelityReport:
    """Multiplicative error model over the events of a replay-valid schedule.

    Gates and swaps use the error of a chain as long as their trap's
    occupancy at the event start; splits, hops and merges contribute fixed
    factors. ``coherence_mode="global"`` multiplies by exp(-makespan / T2);
    ``"idle"`` instead multiplies per-qubit factors exp(-idle_q / T2).
    """
    return evaluate_many(schedule, [params], coherence_mode)[0]


def delta_f(parallel: FidelityReport | float, sequential: FidelityReport | float) -> float:
    """Relative fidelity gain of the parallel run over the sequential one, in percent."""
    f_par = getattr(parallel, "fidelity", parallel)
    f_seq = getattr(sequential, "fidelity", sequential)
    if f_seq == 0:
        raise ZeroDivisionError("sequential fidelity is zero")
    return 100.0 * (f_par - f_seq) / f_seq
