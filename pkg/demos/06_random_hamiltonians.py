"""Stabilizer-horizontal gates against full two-qubit gates on random targets.

For a random GUE (or real GOE) Hamiltonian there is no symmetry to exploit,
yet the horizontal gate for ``SU(4)/U(3)`` uses 6 parameters where a general
``SU(4)`` gate uses 15. We compare the final normalized energy
``Ebar = (E - E_min) / (E_max - E_min)`` of both.

Set N_QUBITS = 8 to reproduce the larger runs (several minutes).
"""

from horizon import gate_catalog
from horizon.vqe import ExperimentConfig, compare_experiment

N_QUBITS, DEPTH = 6, 6
pairs = {"gue": ("su4/u3", "su4"), "goe": ("so4/so3", "so4")}

for ens, (a, b) in pairs.items():
    pa, pb = gate_catalog(a).param_count, gate_catalog(b).param_count
    print(f"{ens.upper()}: {a} ({pa} params/gate) vs {b} ({pb} params/gate)")
    for seed in range(3):
        cfg = ExperimentConfig(hamiltonian=ens, n_qubits=N_QUBITS, depth=DEPTH, hamiltonian_seed=seed,
                               optimizer={"seed": seed})
        comp = compare_experiment(cfg, a, b)
        print(f"  seed {seed}: Ebar {comp.ebar_a:.4f} vs {comp.ebar_b:.4f}  delta={comp.delta_ebar_final:+.4f}")
