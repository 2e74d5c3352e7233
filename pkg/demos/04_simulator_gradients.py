"""State-vector simulation of a bricklayer circuit with adjoint gradients.

We compare the adjoint gradient against central finite differences and
time both on a six-qubit chain.
"""

import time

import numpy as np

from horizon import gate_catalog
from horizon.simulator import BrickCircuit, energy, energy_and_gradient, initial_state
from horizon.vqe import HamiltonianSpec, build_hamiltonian

n, depth = 6, 4
circuit = BrickCircuit(n, depth, gate_catalog("su4/su2-spin-half"), "periodic")
print(f"{circuit.param_count} parameters over {len(circuit.blocks)} blocks")
for i, layer in enumerate(circuit.layers[:2]):
    print(f"layer {i}: {layer}")

H = build_hamiltonian(HamiltonianSpec("heisenberg_uniform", n, "periodic"))
psi0 = initial_state("singlet", n)
theta = np.random.default_rng(0).normal(scale=0.3, size=circuit.param_count)

t0 = time.perf_counter()
E, g = energy_and_gradient(circuit, theta, psi0, H)
t_adj = time.perf_counter() - t0

t0 = time.perf_counter()
h = 1e-5
fd = np.empty_like(theta)
for j in range(theta.size):
    e = np.zeros_like(theta)
    e[j] = h
    fd[j] = (energy(circuit, theta + e, psi0, H) - energy(circuit, theta - e, psi0, H)) / (2 * h)
t_fd = time.perf_counter() - t0

print(f"\nE = {E:.6f}")
print(f"relative gradient error {np.linalg.norm(g - fd) / np.linalg.norm(fd):.1e}")
print(f"adjoint {t_adj * 1e3:.1f} ms vs finite differences {t_fd * 1e3:.1f} ms")
