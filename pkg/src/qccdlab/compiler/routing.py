"""Routing and scheduling of a circuit onto a linear QCCD device.

``route_naive_parallel`` executes the circuit timestep by timestep with a
barrier between the movement phase and the gates of each timestep and no
look-ahead. ``route_greedy_minmove`` walks the gates in ASAP order without
barriers and relocates whichever ion is needed least in the near future.
"""
from __future__ import annotations

from ..circuit import Circuit, asap_layering
from ..machine import DeviceParams, Topology
from .schedule import Schedule, Timeline
from .state import CapacityDeadlock, MachineState, Op, Placement, RoutingError, plan_move

_SERIAL_LANE = ("lane", 0)


def _emit(timeline: Timeline, ops, serialize: bool = False) -> float:
    end = 0.0
    extra = (_SERIAL_LANE,) if serialize else ()
    for op in ops:
        end = max(end, timeline.place(op, extra=extra).end)
    return end


def _check_inputs(circuit: Circuit, placement: Placement, topology: Topology) -> MachineState:
    problems = placement.check(topology, circuit.n_qubits, reserve_free_slot=False)
    if problems:
        raise RoutingError("invalid placement: " + "; ".join(problems))
    return MachineState.from_placement(placement, topology)


def _execution_trap(state: MachineState, proj: list[int], a: int, b: int) -> int:
    lo, hi = sorted((a, b))
    ta, tb = state.trap_of[lo], state.trap_of[hi]
    if ta == tb:
        return ta
    cap = state.capacity
    if proj[ta] + 1 <= cap:
        return ta
    if proj[tb] + 1 <= cap:
        return tb
    slack = [t for t in range(state.n_traps) if proj[t] + 2 <= cap]
    if not slack:
        raise RoutingError(f"no trap can host gate ({a}, {b})")
    return min(slack, key=lambda t: (abs(t - ta), t))


def route_naive_parallel(circuit: Circuit, placement: Placement, topology: Topology,
                         params: DeviceParams, overlap_moves: bool = True,
                         max_rounds: int = 8) -> Schedule:
    state = _check_inputs(circuit, placement, topology)
    timeline = Timeline(params)
    for layer in asap_layering(circuit).layers:
        gates = [circuit.gates[i] for i in sorted(layer)]
        proj = [state.occupancy(t) for t in range(state.n_traps)]
        exec_trap = {}
        for g in gates:
            t = _execution_trap(state, proj, *g.qubits)
            exec_trap[g.program_index] = t
            for q in g.qubits:
                if state.trap_of[q] != t:
                    proj[t] += 1
                    proj[state.trap_of[q]] -= 1

        barrier = 0.0
        for _ in range(max_rounds):
            # bubble displacement may push already-settled ions away; re-queue them
            pending = [(q, exec_trap[g.program_index]) for g in gates for q in g.qubits
                       if state.trap_of[q] != exec_trap[g.program_index]]
            if not pending:
                break
            while pending:
                pick = next((m for m in pending if state.has_room(m[1])), pending[0])
                pending.remove(pick)
                q, dest = pick
                if state.trap_of[q] == dest:
                    continue
                settled = {x for g in gates for x in g.qubits
                           if state.trap_of[x] == exec_trap[g.program_index]}
                try:
                    ops = plan_move(state, q, dest, protect=settled)
                except CapacityDeadlock as exc:
                    raise RoutingError(f"naive router: {exc}") from exc
                barrier = max(barrier, _emit(timeline, ops, serialize=not overlap_moves))
        else:
            raise RoutingError("naive router: displaced ions did not settle")

        for g in gates:
            t = exec_trap[g.program_index]
            timeline.place(Op("gate", g.qubits, t, g.program_index), not_before=barrier)

    return Schedule(tuple(timeline.events), placement, topology, circuit,
                    "naive" if overlap_moves else "naive-serial")


def route_greedy_minmove(circuit: Circuit, placement: Placement, topology: Topology,
                         params: DeviceParams, lookahead_window: int = 20) -> Schedule:
    state = _check_inputs(circuit, placement, topology)
    timeline = Timeline(params)
    layer_of = asap_layering(circuit).layer_of
    order = sorted(circuit.gates, key=lambda g: (layer_of[g.program_index], g.program_index))
    remaining = [0] * circuit.n_qubits
    for g in order:
        for q in g.qubits:
            remaining[q] += 1

    for pos, g in enumerate(order):
        a, b = g.qubits
        if state.trap_of[a] != state.trap_of[b]:
            window = order[pos:pos + lookahead_window]
            soon = {q: sum(q in w.qubits for w in window) for q in (a, b)}
            mover, other = sorted((a, b), key=lambda q: (soon[q], remaining[q], q))
            options = [(mover, state.trap_of[other]), (other, state.trap_of[mover])]
            roomy = [o for o in options if state.has_room(o[1])]
            for q, dest in roomy + [o for o in options if o not in roomy]:
                trial = state.copy()
                try:
                    ops = plan_move(trial, q, dest, protect=(a, b))
                except CapacityDeadlock:
                    continue
                if trial.trap_of[a] != trial.trap_of[b]:
                    continue
                state = trial
                _emit(timeline, ops)
                break
            else:
                raise RoutingError(f"greedy router: cannot co-locate qubits {a} and {b}")
        timeline.place(Op("gate", g.qubits, state.trap_of[a], g.program_index))
        for q in g.qubits:
            remaining[q] -= 1

    return Schedule(tuple(timeline.events), placement, topology, circuit, "greedy")


ROUTERS = {"naive": route_naive_parallel, "greedy": route_greedy_minmove}
