"""
When does parallelism pay off?
==============================

Each random benchmark runs twice: on n/2 small traps (two ions each, every
pair gated at once) and sequentially on one long chain. Moving ions costs
time and fidelity, so the parallel device wins only while little movement is
needed.

Run with ``python demos/movement_sweep.py`` (about half a minute).
"""
import numpy as np

from qccdlab.experiments import SweepSpec, crossover_pct, sweep_movement

spec = SweepSpec(qubit_counts=(8, 20, 40), swap_ratios=(1.0, 3.0))
rows = sweep_movement(spec)

pcts = np.array(spec.movement_pcts)


def series(n, mode, r):
    return np.array([row["fidelity"] for row in rows
                     if row["n_qubits"] == n and row["mode"] == mode
                     and row["swap_error_ratio"] == r])


for n in spec.qubit_counts:
    par, seq = series(n, "parallel", 1.0), series(n, "sequential", 1.0)
    print(f"\nn = {n}")
    print("  p    parallel  sequential")
    for p, a, b in zip(pcts, par, seq):
        print(f"  {p:3d}  {a:.4f}    {b:.4f}{'  <' if a > b else ''}")
    print("  parallel wins up to p =", crossover_pct(rows, n, swap_ratio=1.0))

# %%
# A more expensive swap (three times a two-qubit gate) drags the
# parallel curve down, and the crossover moves left.
for n in spec.qubit_counts:
    print(f"n = {n}: crossover with r=3 ->", crossover_pct(rows, n, swap_ratio=3.0))

# The sequential rows do not depend on p at all: same gates, same chain
print("sequential spread at n=40:", np.ptp(series(40, "sequential", 1.0)))
