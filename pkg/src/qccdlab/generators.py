"""Deterministic benchmark circuit generators.

``random_parallel`` builds the fully parallel worst-case benchmarks with a
tunable ion-movement percentage. ``qft``, ``qaoa_complete``, ``draper`` and
``cuccaro`` build the structured algorithms as two-qubit gate lists.
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .circuit import Circuit


@dataclass(frozen=True)
class BenchSpec:
    n_qubits: int
    movement_pct: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n_qubits < 2 or self.n_qubits % 2:
            raise ValueError(f"n_qubits must be even and >= 2, got {self.n_qubits}")
        if not 0.0 <= self.movement_pct <= 100.0:
            raise ValueError(f"movement_pct must lie in [0, 100], got {self.movement_pct}")

    @property
    def depth(self) -> int:
        return self.n_qubits


def rotated_slot_count(n_qubits: int, movement_pct: float) -> int:
    """Number of pair slots whose partners are rotated at each timestep."""
    # half-up rounding, not banker's
    return int(math.floor(movement_pct / 100.0 * (n_qubits // 2) + 0.5))


def _settle(block: list[int], new_pairs, old_pairs, capacity: int = 3) -> list[int]:
    """Trap (= slot) each rotated pair ends up in under the naive router.

    Mirrors the router's choice on the benchmark's target device (one pair
    per trap, capacity 3): a pair goes to the trap of its lower-indexed
    qubit, else its partner's trap, else the nearest trap with two free
    slots. Traps outside the window stay at two ions and never qualify.
    """
    trap_of = {q: t for t, pair in zip(block, old_pairs) for q in pair}
    proj = {t: 2 for t in block}
    landing = []
    for pair in new_pairs:
        lo, hi = sorted(pair)
        tl, th = trap_of[lo], trap_of[hi]
        if tl == th or proj[tl] + 1 <= capacity:
            t = tl
        elif proj[th] + 1 <= capacity:
            t = th
        else:
            t = min((u for u in block if proj[u] + 2 <= capacity),
                    key=lambda u: (abs(u - tl), u))
        for q in pair:
            if trap_of[q] != t:
                proj[t] += 1
                proj[trap_of[q]] -= 1
        landing.append(t)
    assert sorted(landing) == block, landing
    return landing


def random_parallel(spec: BenchSpec) -> Circuit:
    """Fully parallel benchmark: n/2 disjoint gates in each of n timesteps.

    Pair slots start as (2i, 2i+1), slot i living in trap i of an n/2-trap
    device. Between timesteps a window of k = round(p/100 * n/2) contiguous
    slots, whose position is drawn once from ``seed``, rotates its second
    members cyclically by one slot. k = 0 keeps the pairing fixed and
    k = n/2 changes every partner; a window of one slot has nothing to
    rotate with, so k = 1 behaves like k = 0.

    Slots follow the traps rather than the labels: after each step the slot
    bookkeeping is updated to where the naive router will settle every new
    pair. That keeps the rotated window on the same physical traps, so the
    movement cost per step is the same at every step and grows with k.
    """
    n = spec.n_qubits
    n_slots = n // 2
    k = rotated_slot_count(n, spec.movement_pct)
    if k < 2:
        k = 0
    offset = int(np.random.default_rng(spec.seed).integers(n_slots - k + 1))
    window = list(range(offset, offset + k))

    slots = [(2 * i, 2 * i + 1) for i in range(n_slots)]
    pairs = list(slots)
    for _ in range(1, spec.depth):
        layer = list(slots)
        if k:
            old = [slots[s] for s in window]
            new = [(old[j][0], old[(j + 1) % k][1]) for j in range(k)]
            for s, pair in zip(window, new):
                layer[s] = pair
            for t, pair in zip(_settle(window, new, old), new):
                slots[t] = pair
        pairs.extend(layer)
    return Circuit.from_pairs(n, pairs, name=f"random_{n}_p{spec.movement_pct:g}_s{spec.seed}")


def qft(n: int) -> Circuit:
    """Controlled-phase ladder of the QFT: (i, j) for i ascending, j > i ascending."""
    if n < 2:
        raise ValueError(f"qft needs at least 2 qubits, got {n}")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Circuit.from_pairs(n, pairs, name=f"qft_{n}", label="cp")


def qaoa_complete(n: int, order: str = "qft") -> Circuit:
    """One ZZ interaction per edge of the complete graph K_n.

    ``order="qft"`` emits edges in the same order as :func:`qft`, which makes
    both circuits statistically identical. ``order="round_robin"`` emits a
    1-factorisation of K_n (depth n-1 for even n, n for odd n).
    """
    if n < 2:
        raise ValueError(f"qaoa needs at least 2 qubits, got {n}")
    if order == "qft":
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif order == "round_robin":
        pairs = _round_robin_pairs(n)
    else:
        raise ValueError(f"unknown QAOA edge order {order!r}")
    return Circuit.from_pairs(n, pairs, name=f"qaoa_{n}", label="zz")


def _round_robin_pairs(n: int) -> list[tuple[int, int]]:
    # circle method; a dummy player pads odd n
    players = list(range(n)) + ([None] if n % 2 else [])
    m = len(players)
    pairs = []
    for _ in range(m - 1):
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a is not None and b is not None:
                pairs.append((min(a, b), max(a, b)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return pairs


def draper(n_total: int) -> Circuit:
    """QFT-based adder on two m-qubit registers, m = n_total / 2.

    Register A occupies qubits 0..m-1 and register B qubits m..2m-1. The
    circuit is QFT(B), then the phase-addition block (B_j for j descending,
    each receiving controlled phases from A_i for i = m-1 down to j), then
    the inverse QFT(B). The swap-free QFT leaves B bit-reversed, so the
    inverse acts on reversed labels and its pair sequence coincides with the
    forward one. Gate count is m(m-1) + m(m+1)/2.
    """
    if n_total < 4 or n_total % 2:
        raise ValueError(f"draper needs an even qubit count >= 4, got {n_total}")
    m = n_total // 2
    b = [m + j for j in range(m)]
    fwd = [(b[i], b[j]) for i in range(m) for j in range(i + 1, m)]
    add = [(i, b[j]) for j in reversed(range(m)) for i in reversed(range(j, m))]
    pairs = fwd + add + fwd
    return Circuit.from_pairs(n_total, pairs, name=f"draper_{n_total}", label="cp")


# Toffoli(c1, c2 -> t) as six CNOTs (single-qubit T/H gates dropped):
#   cx(c1,t) cx(c2,t) cx(c1,t) cx(c2,t) cx(c2,c1) cx(c2,c1)
def _toffoli(c1: int, c2: int, t: int) -> list[tuple[int, int]]:
    return [(c1, t), (c2, t), (c1, t), (c2, t), (c2, c1), (c2, c1)]


def _maj(c: int, b: int, a: int) -> list[tuple[int, int]]:
    # the two CNOTs share control a and commute; a->c goes first
    return [(a, c), (a, b)] + _toffoli(c, b, a)


def _uma(c: int, b: int, a: int) -> list[tuple[int, int]]:
    return _toffoli(c, b, a) + [(a, c), (c, b)]


def cuccaro(n_total: int) -> Circuit:
    """Ripple-carry adder (MAJ ladder, carry-out CNOT, UMA ladder).

    Qubit layout for operand size m = (n_total - 2) / 2:
    carry-in 0, then b_i = 1 + 2i and a_i = 2 + 2i, carry-out n_total - 1.
    Each Toffoli uses the six-CNOT template above, so the circuit has
    16m + 1 two-qubit gates.
    """
    if n_total < 4 or n_total % 2:
        raise ValueError(f"cuccaro needs n_total = 2m + 2 with m >= 1, got {n_total}")
    m = (n_total - 2) // 2
    cin, cout = 0, n_total - 1
    b = [1 + 2 * i for i in range(m)]
    a = [2 + 2 * i for i in range(m)]
    carry = [cin] + a[:-1]
    pairs: list[tuple[int, int]] = []
    for i in range(m):
        pairs += _maj(carry[i], b[i], a[i])
    pairs.append((a[-1], cout))
    for i in reversed(range(m)):
        pairs += _uma(carry[i], b[i], a[i])
    return Circuit.from_pairs(n_total, pairs, name=f"cuccaro_{n_total}", label="cx")


GENERATORS = {
    "qft": qft,
    "qaoa": qaoa_complete,
    "draper": draper,
    "cuccaro": cuccaro,
}
