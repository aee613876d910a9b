"""
How many traps?
===============

The slot budget is held fixed (capacity ceil(n/T) + 1 per trap) while the
trap count T varies. Short chains give better gates; more traps means more
shuttling. The best T sits somewhere in between.

Run with ``python demos/trap_sweep.py`` (about twenty seconds).
"""
import numpy as np

from qccdlab.experiments import SweepSpec, sweep_traps

spec = SweepSpec(benchmark=("cuccaro", "draper", "qft"), qubit_counts=(20, 40, 50),
                 router="greedy", placement="sta")
rows, summary = sweep_traps(spec)

print(f"{'algorithm':10}{'n':>4}{'opt T':>7}{'max T':>7}{'dF %':>10}")
for s in summary:
    max_t = "-" if s["max_traps"] is None else s["max_traps"]
    print(f"{s['algorithm']:10}{s['n_qubits']:>4}{s['opt_traps']:>7}{max_t:>7}"
          f"{s['delta_f_pct']:>10.1f}")

# %%
# The full fidelity curve for one case
sel = [r for r in rows if r["algorithm"] == "qft" and r["n_qubits"] == 40]
traps = np.array([r["n_traps"] for r in sel])
fid = np.array([r["fidelity"] for r in sel])
moves = np.array([r["swap_count"] + r["hop_count"] for r in sel])
for t, f, m in zip(traps, fid, moves):
    print(f"T={t:2d}  F={f:.3e}  swaps+hops={m}")
print("best T:", traps[np.argmax(fid)])
