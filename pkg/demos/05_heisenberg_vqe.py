"""Horizontal vs equivariant gates on the Heisenberg ring.

The equivariant gate commutes with global spin rotations, so it can never
change the total spin of the input. Starting from |0...0> (maximal spin)
it is stuck in the wrong sector; from a product of singlets it works.
The horizontal gate has no such restriction.

Takes a few minutes: each run is 500 Adam steps on eight qubits.
"""

from horizon.simulator import initial_state, total_spin_observable, expectation
from horizon.vqe import ExperimentConfig, build_hamiltonian, exact_ground_energy, run_experiment, sector_ground_energy

opt = {"learning_rate": 0.02, "beta2": 0.99, "max_iters": 500}
cases = [
    ("su4/su2-spin-half", "singlet"),
    ("su4/su2-spin-half:equivariant", "singlet"),
    ("su4/su2-spin-half:equivariant", "zeros"),
    ("su4/su2-spin-half", "zeros"),
]
for gate, state in cases:
    cfg = ExperimentConfig(gate=gate, initial_state=state, track_spin=True, optimizer=opt)
    rec = run_experiment(cfg)
    print(f"{gate:32s} from {state:8s} dE={rec.final_delta_e:.2e}  <S^2> {rec.s2[0]:.2f} -> {rec.s2[-1]:.2f}"
          f"  ({rec.wall_time:.0f}s)")

# the floor the equivariant run hits from |0...0>
cfg = ExperimentConfig()
H = build_hamiltonian(cfg.hamiltonian_spec())
S2 = total_spin_observable(8)
s2 = expectation(initial_state("zeros", 8), S2)
print(f"\nlowest energy with <S^2>={s2:.0f} sits {sector_ground_energy(H, S2, s2) - exact_ground_energy(H)[0]:.3f} "
      "above the ground state")
