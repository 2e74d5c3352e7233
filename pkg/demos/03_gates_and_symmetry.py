"""Horizontal gates, and how a symmetry moves their parameters.

Conjugating ``exp(theta . m)`` by a symmetry element ``k`` gives another
horizontal gate, so ``U(theta) k = k U(theta')`` for some ``theta'``.
On the Bloch sphere ``theta'`` is a plane rotation of ``theta``.
"""

import numpy as np
import scipy.linalg as sla

from horizon import gate_catalog, gate_unitary
from horizon.gates import kak_circuit_unitary, reparameterize_under_symmetry, vatan_block, vatan_coefficients
from horizon.pauli import pauli_matrix

bloch = gate_catalog("su2/u1")
theta = np.array([0.4, -0.3])
for phi in (0.0, np.pi / 8, np.pi / 4):
    k = sla.expm(1j * phi * pauli_matrix("Z"))
    t2 = reparameterize_under_symmetry(bloch, k, theta)
    err = np.abs(gate_unitary(bloch, theta) @ k - k @ gate_unitary(bloch, t2)).max()
    print(f"phi={phi:.3f}: theta'={np.round(t2, 4)}  |U k - k U'|={err:.1e}")

# The three-CNOT block realizes exp(i (c1 XX + c2 YY + c3 ZZ)) with c affine in theta.
theta = np.array([0.3, -1.1, 0.7])
c = vatan_coefficients(theta)
target = sla.expm(1j * sum(ci * pauli_matrix(w) for ci, w in zip(c, ("XX", "YY", "ZZ"))))
B = vatan_block(*theta)
overlap = abs(np.trace(target.conj().T @ B)) / 4
print(f"\nblock coefficients c={np.round(c, 4)}, |<target, block>|={overlap:.12f}")

# Sandwiching it between single-qubit rotations and their inverses gives a gate in exp(m).
U = kak_circuit_unitary([0.2, 0.1, -0.3], [0.5, 0.0, 0.4], theta)
print("kak-circuit is unitary:", np.allclose(U.conj().T @ U, np.eye(4)))
