"""Cartan decompositions from involutions, and the KAK form they give.

A symmetric space comes with an involution whose +1 eigenspace is ``k``
and -1 eigenspace is ``m``. Inside ``m`` we pick a maximal abelian ``h``
and write every group element as ``K exp(h) K``.
"""

import numpy as np

from horizon import gate_catalog, gate_unitary, homogeneous_space
from horizon.gates import horizontal_residual

for sid in ("su4/su2xsu2", "su4/sp2", "su4/u3", "so4/u2", "su8/s-u2xu6"):
    sp = homogeneous_space(sid)
    inv = sp.spec.involution
    print(f"{sid:14s} involution {inv:14s} dim k={sp.k.dim:2d}  dim m={sp.m.dim:2d}  rank={sp.cartan.h.dim}")

# The two-qubit case: h is spanned by XX, YY, ZZ, the familiar Cartan coordinates.
print("\ntwo-qubit Cartan subalgebra:", homogeneous_space("su4/su2xsu2").cartan.h.labels())

# exp(B) exp(h) exp(-B) with B in k stays inside exp(m);
# small angles keep the matrix log on its principal branch.
gate = gate_catalog("su4/sp2:kak")
rng = np.random.default_rng(1)
theta = 0.2 * rng.normal(size=gate.param_count)
U = gate_unitary(gate, theta)
print(f"\nKAK gate on SU(4)/Sp(2): {gate.param_count} parameters")
print(f"component of log U outside m: {horizontal_residual(gate, theta):.1e}")
print(f"unitarity error: {np.abs(U.conj().T @ U - np.eye(4)).max():.1e}")
