"""
Catalog of the homogeneous spaces ``G/K`` used throughout the package.

Each entry knows its ambient algebra ``g`` and how to build the symmetry
subalgebra ``k``: either from explicit generators or as the fixed points of
an involution. Everything downstream (decompositions, gates, the CLI) looks
spaces up here by string id.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .algebra import (
    AlgebraBasis,
    Decomposition,
    Subspace,
    cartan_subalgebra,
    check_subalgebra,
    full_decomposition,
    so_basis,
    su_basis,
    subspace_from_matrices,
)
from .errors import UnknownSpace
from .linalg import DEFAULT_TOL
from .pauli import parse_pauli_sum
from .symmetric import CartanDecomposition, parse_involution_id, split_by_involution, verify_symmetric


def _iP(*exprs):
    return [1j * parse_pauli_sum(e) for e in exprs]


def _unit(i, j, N):
    E = np.zeros((N, N), complex)
    E[i, j] = 1
    return E


def spin_three_halves() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-3/2 operators in the four-dimensional irrep, scaled to integer spectrum (3, 1, -1, -3)."""
    r3 = np.sqrt(3)
    Sx = np.array([[0, r3, 0, 0], [r3, 0, 2, 0], [0, 2, 0, r3], [0, 0, r3, 0]], complex)
    Sy = np.array([[0, -1j * r3, 0, 0], [1j * r3, 0, -2j, 0], [0, 2j, 0, -1j * r3], [0, 0, 1j * r3, 0]])
    Sz = np.diag([3.0, 1.0, -1.0, -3.0]).astype(complex)
    return Sx, Sy, Sz


def _spin_half_k():
    return _iP("XI + IX", "YI + IY", "ZI + IZ")


def _spin_three_halves_k():
    return [1j * S for S in spin_three_halves()]


def _chiral_su2_k():
    return _iP("IY", "YX", "YZ")


def _givens_k():
    # rotation between |01> and |10>: the real charge-preserving generator
    return [_unit(1, 2, 4) - _unit(2, 1, 4)]


@dataclass(frozen=True)
class SpaceDef:
    """Static description of a catalog entry.

    ``k_builder`` returns generators of ``k``; ``involution`` (an id string)
    is used instead when ``k`` is the fixed-point set of an involution.
    """

    space_id: str
    title: str
    group: str
    N: int
    k_builder: Callable | None = None
    involution: str | None = None
    symmetric: bool = False
    aliases: tuple = ()
    note: str = ""

    def ambient(self) -> AlgebraBasis:
        return su_basis(self.N) if self.group == "su" else so_basis(self.N)


_SPACES = [
    SpaceDef("su2/u1", "SU(2)/U(1)", "su", 2, lambda: _iP("Z"), "custom:bloch", True, ("bloch",),
             "Bloch sphere: rotations that move |0>"),
    SpaceDef("su4/su2-spin-half", "SU(4)/SU(2) spin-1/2", "su", 4, _spin_half_k, None, False,
             ("su4/su2",), "global SU(2) acting as U x U on two spins"),
    SpaceDef("su4/su2xsu2", "SU(4)/(SU(2)xSU(2))", "su", 4, None, "custom:su4", True,
             ("su4/so4",), "local unitaries on two qubits"),
    SpaceDef("su4/u3", "SU(4)/U(3)", "su", 4, None, "AIII:p=1,q=3", True, (),
             "stabilizer of |00> up to phase"),
    SpaceDef("so4/so3", "SO(4)/SO(3)", "so", 4, None, "BDI:p=1,q=3", True, ("so4/o3",),
             "real stabilizer of |00>"),
    SpaceDef("su4/su2-spin-three-halves", "SU(4)/SU(2) spin-3/2", "su", 4, _spin_three_halves_k, None, False,
             ("su4/su2-spin-3/2",), "four-dimensional irrep of SU(2)"),
    SpaceDef("su4/sp2", "SU(4)/Sp(2)", "su", 4, None, "AII:n=2", True, (), "symplectic subgroup"),
    SpaceDef("so4/su2", "SO(4)/SU(2)", "so", 4, _chiral_su2_k, None, False, (),
             "one chiral factor of so(4) = su(2) + su(2)"),
    SpaceDef("so4/1xso2x1", "SO(4)/(1xSO(2)x1)", "so", 4, _givens_k, None, False, ("so4/charge",),
             "rotation inside the single-excitation sector"),
    SpaceDef("su8/s-u2xu6", "SU(8)/S(U(2)xU(6))", "su", 8, None, "AIII:p=2,q=6", True, ("su8/grassmannian",),
             "complex Grassmannian of 2-planes in C^8"),
    SpaceDef("so4/u2", "SO(4)/U(2)", "so", 4, None, "DIII:n=2", True, (), "complex structures on R^4"),
    SpaceDef("su4", "SU(4)", "su", 4, lambda: [], None, False, ("su4/1",), "all two-qubit unitaries"),
    SpaceDef("so4", "SO(4)", "so", 4, lambda: [], None, False, ("so4/1",), "all real two-qubit rotations"),
]

# the ten rows of the dimension table, in order
TABLE_SPACES = (
    "su2/u1",
    "su4/su2-spin-half",
    "su4/su2xsu2",
    "su4/u3",
    "so4/so3",
    "su4/su2-spin-three-halves",
    "su4/sp2",
    "so4/su2",
    "so4/1xso2x1",
    "su8/s-u2xu6",
)

_BY_ID = {}
for _s in _SPACES:
    _BY_ID[_s.space_id] = _s
    for _a in _s.aliases:
        _BY_ID[_a] = _s


def space_ids(include_aliases: bool = False) -> list[str]:
    return sorted(_BY_ID) if include_aliases else [s.space_id for s in _SPACES]


def get_space(space_id: str) -> SpaceDef:
    try:
        return _BY_ID[space_id]
    except KeyError:
        raise UnknownSpace(f"unknown space id {space_id!r}; known: {', '.join(space_ids())}") from None


@dataclass(frozen=True, eq=False)
class HomogeneousSpace:
    """Resolved catalog entry: ``g``, ``k``, the full decomposition and, if symmetric, the Cartan split."""

    spec: SpaceDef
    g: AlgebraBasis
    k: Subspace
    decomposition: Decomposition
    cartan: CartanDecomposition | None

    @property
    def space_id(self) -> str:
        return self.spec.space_id

    @property
    def m(self) -> Subspace:
        return self.decomposition.m

    @property
    def commutant(self) -> Subspace:
        return self.decomposition.gk

    def cartan_subalgebra(self, seed=None) -> Subspace:
        if self.cartan is not None and seed is None:
            return self.cartan.h
        return cartan_subalgebra(self.m, seed=seed)

    def symmetric_report(self):
        return verify_symmetric(self.k, self.m)


@lru_cache(maxsize=None)
def _resolve(space_id: str) -> HomogeneousSpace:
    spec = get_space(space_id)
    g = spec.ambient()
    cartan = None
    if spec.involution is not None:
        cartan = split_by_involution(g, parse_involution_id(spec.involution))
        k = cartan.k
    else:
        gens = spec.k_builder()
        k = subspace_from_matrices(g, gens, DEFAULT_TOL) if len(gens) else Subspace(g, np.zeros((0, g.dim)))
    dec = full_decomposition(g, k)
    return HomogeneousSpace(spec, g, k, dec, cartan)


def homogeneous_space(space_id: str) -> HomogeneousSpace:
    """Look up and (once per process) compute a catalog entry."""
    return _resolve(get_space(space_id).space_id)


def custom_space(g_mats, k_mats, tol=None) -> HomogeneousSpace:
    """Decompose a user-supplied pair: ``g`` is closed under brackets, ``k`` a subalgebra of it."""
    tol = tol or DEFAULT_TOL
    g = AlgebraBasis.from_matrices(g_mats, tol=tol)
    check_subalgebra(g.subspace(), tol)
    k = subspace_from_matrices(g, k_mats, tol)
    dec = full_decomposition(g, k, tol)
    spec = SpaceDef("custom", "custom", "custom", g.ambient_dim)
    return HomogeneousSpace(spec, g, k, dec, None)
