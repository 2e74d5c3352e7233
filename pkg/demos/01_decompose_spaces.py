"""Split two-qubit algebras around a symmetry and look at the pieces.

For every catalog entry we print the dimensions of the four blocks
``r``, ``g^k_o``, ``z(k)`` and ``k_o``. Then we take the global spin
rotation on two qubits apart in more detail.
"""

from horizon import homogeneous_space, space_ids

print(f"{'space':28s} {'r':>3s} {'gk_o':>5s} {'z(k)':>5s} {'k_o':>4s}")
for sid in space_ids():
    print(f"{sid:28s} " + " ".join(f"{d:>4d}" for d in homogeneous_space(sid).decomposition.dims))

# Spin-1/2 SU(2) acting as U x U. Its horizontal space m has 12 directions:
# 11 that break the symmetry and one (the Heisenberg coupling) that commutes with it.
sp = homogeneous_space("su4/su2-spin-half")
print("\nspin-1/2 symmetry generators:", sp.k.labels())
print("commutant (equivariant directions):", sp.commutant.labels())

rep = sp.symmetric_report()
print(f"[k,k] outside k: {rep.kk_residual:.1e}")
print(f"[k,m] outside m: {rep.km_residual:.1e}")
# nonzero: this pair is homogeneous but not symmetric
print(f"[m,m] outside k: {rep.mm_residual:.3f}")
