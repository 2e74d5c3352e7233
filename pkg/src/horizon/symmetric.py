"""
Involutions of classical Lie algebras and the Cartan splits they induce.

An involution is an automorphism ``phi`` of ``g`` with ``phi^2 = id``. Its
+1 eigenspace is a subalgebra ``k`` and its -1 eigenspace is a complement
``m`` with ``[m, m]`` inside ``k``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraBasis,
    Subspace,
    bracket_residual,
    cartan_subalgebra,
    so_basis,
    su_basis,
)
from .errors import BadDims, NotAutomorphism, NotInvolutive, ShapeMismatch
from .linalg import DEFAULT_TOL, Tolerance, canonical_rows, dagger, null_space
from .pauli import pauli_matrix

KINDS = ("AI", "AII", "AIII", "BDI", "CI", "CII", "DIII", "Custom")


def structure_matrix(name: str, p: int | None = None, q: int | None = None, n: int | None = None) -> np.ndarray:
    """The sign and symplectic matrices ``I_{p,q}``, ``J_n`` and ``K_{p,q}``.

    Examples
    --------
    >>> structure_matrix("Jn", n=1).real
    array([[ 0.,  1.],
           [-1.,  0.]])
    """
    if name in ("Ipq", "Kpq"):
        if p is None or q is None or p < 1 or q < 1:
            raise BadDims(f"{name} needs positive p and q, got p={p}, q={q}")
        block = np.concatenate([-np.ones(p), np.ones(q)])
        diag = block if name == "Ipq" else np.concatenate([block, block])
        return np.diag(diag).astype(complex)
    if name == "Jn":
        if n is None or n < 1:
            raise BadDims(f"Jn needs a positive n, got {n}")
        J = np.zeros((2 * n, 2 * n), complex)
        J[:n, n:] = np.eye(n)
        J[n:, :n] = -np.eye(n)
        return J
    raise BadDims(f"unknown structure matrix {name!r}")


_CUSTOM_RECIPES = {
    # phi(A) = sign * C op(A) C^dagger
    "bloch": (-1, "X", "T"),
    "su4": (-1, "YY", "T"),
}


@dataclass(frozen=True, eq=False)
class Involution:
    """A classical involution, or ``phi(A) = sign * C op(A) C^dagger`` for ``Custom``.

    Parameters
    ----------
    kind : str
        One of ``AI, AII, AIII, BDI, CI, CII, DIII, Custom``.
    p, q, n : int, optional
        Block sizes. ``AI`` uses ``n`` for the matrix size.
    conj : ndarray, optional
        Conjugating matrix ``C`` of a custom involution.
    op : {"id", "T", "*"}
        What to do to ``A`` before conjugating: nothing, transpose or
        entrywise complex conjugate.
    sign : int
        Overall sign of a custom involution.
    """

    kind: str
    p: int | None = None
    q: int | None = None
    n: int | None = None
    conj: np.ndarray | None = None
    op: str = "id"
    sign: int = 1
    name: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown involution kind {self.kind!r}")
        need_pq = self.kind in ("AIII", "BDI", "CII")
        if need_pq and (self.p is None or self.q is None or self.p < 1 or self.q < 1):
            raise BadDims(f"{self.kind} needs positive p and q")
        if self.kind in ("AI", "AII", "CI", "DIII") and (self.n is None or self.n < 1):
            raise BadDims(f"{self.kind} needs a positive n")
        if self.kind == "Custom":
            if self.conj is None:
                raise ValueError("custom involution needs a conjugating matrix")
            if self.op not in ("id", "T", "*"):
                raise ValueError(f"op must be id, T or *, got {self.op!r}")

    @classmethod
    def custom(cls, name: str) -> "Involution":
        if name not in _CUSTOM_RECIPES:
            raise ValueError(f"unknown custom involution {name!r}")
        sign, word, op = _CUSTOM_RECIPES[name]
        return cls("Custom", conj=np.array(pauli_matrix(word)), op=op, sign=sign, name=name)

    @property
    def size(self) -> int:
        """Matrix size ``N`` of the algebra this involution acts on."""
        k = self.kind
        if k in ("AIII", "BDI"):
            return self.p + self.q
        if k == "CII":
            return 2 * (self.p + self.q)
        if k == "AI":
            return self.n
        if k in ("AII", "CI", "DIII"):
            return 2 * self.n
        return self.conj.shape[0]

    def natural_algebra(self) -> AlgebraBasis:
        k = self.kind
        if k in ("AI", "AII", "AIII"):
            return su_basis(self.size)
        if k in ("BDI", "DIII"):
            return so_basis(self.size)
        if k in ("CI", "CII"):
            return sp_basis(self.size // 2)
        return su_basis(self.size)

    def __call__(self, A) -> np.ndarray:
        return apply_involution(self, A)

    def identifier(self) -> str:
        if self.kind == "Custom":
            return f"custom:{self.name}" if self.name else "custom"
        if self.kind in ("AIII", "BDI", "CII"):
            return f"{self.kind}:p={self.p},q={self.q}"
        return f"{self.kind}:n={self.n}"


def apply_involution(phi: Involution, A) -> np.ndarray:
    """``phi(A)`` for a single matrix or a stack of matrices."""
    A = np.asarray(A, dtype=complex)
    N = phi.size
    if A.shape[-2:] != (N, N):
        raise ShapeMismatch(f"{phi.identifier()} acts on {N}x{N} matrices, got {A.shape[-2:]}")
    k = phi.kind
    if k in ("AI", "CI"):
        return A.conj()
    if k == "AII":
        J = structure_matrix("Jn", n=phi.n)
        return J @ A.conj() @ J.T
    if k in ("AIII", "BDI"):
        D = structure_matrix("Ipq", phi.p, phi.q)
        return D @ A @ D
    if k == "CII":
        D = structure_matrix("Kpq", phi.p, phi.q)
        return D @ A @ D
    if k == "DIII":
        J = structure_matrix("Jn", n=phi.n)
        return J @ A @ J.T
    C = phi.conj
    opA = {"id": A, "T": np.swapaxes(A, -1, -2), "*": A.conj()}[phi.op]
    return phi.sign * (C @ opA @ dagger(C))


_ID_RE = re.compile(r"^(?P<kind>[A-Za-z]+)(?::(?P<args>.*))?$")


def parse_involution_id(text: str) -> Involution:
    """Parse identifiers such as ``"AIII:p=1,q=3"``, ``"AII:n=2"`` or ``"custom:bloch"``."""
    m = _ID_RE.match(text.strip())
    if m is None:
        raise ValueError(f"cannot parse involution id {text!r}")
    kind, args = m.group("kind"), m.group("args") or ""
    if kind.lower() == "custom":
        return Involution.custom(args.strip())
    kind = kind.upper()
    if kind not in KINDS:
        raise ValueError(f"unknown involution kind {kind!r}")
    params = {}
    for part in filter(None, (a.strip() for a in args.split(","))):
        key, _, val = part.partition("=")
        if key not in ("p", "q", "n") or not val.strip().isdigit():
            raise ValueError(f"bad involution parameter {part!r}")
        params[key] = int(val)
    return Involution(kind, **params)


@dataclass(frozen=True, eq=False)
class CartanDecomposition:
    """``g = k + m`` from an involution, with a maximal abelian ``h`` inside ``m``."""

    k: Subspace
    m: Subspace
    h: Subspace
    involution: Involution | None = None

    @property
    def ambient(self) -> AlgebraBasis:
        return self.k.ambient


def involution_matrix(g: AlgebraBasis, phi: Involution, tol: Tolerance | None = None) -> np.ndarray:
    """Real matrix of ``phi`` in the coordinates of ``g`` (column j is phi(X_j))."""
    tol = tol or DEFAULT_TOL
    images = apply_involution(phi, g.elements)
    coords = g.coords(images)
    leak = np.linalg.norm((images - g.combine(coords)).reshape(g.dim, -1), axis=1)
    if np.any(leak > tol.eq_tol):
        raise NotAutomorphism(f"{phi.identifier()} maps basis element {int(np.argmax(leak))} out of g")
    return coords.T


def split_by_involution(g: AlgebraBasis, phi: Involution, seed=None, tol: Tolerance | None = None) -> CartanDecomposition:
    """Eigenspaces of ``phi`` on ``g`` plus a Cartan subalgebra of the -1 part.

    The involution and automorphism properties are checked on every basis
    element and every pair of basis elements.
    """
    tol = tol or DEFAULT_TOL
    Phi = involution_matrix(g, phi, tol)
    sq = np.abs(Phi @ Phi - np.eye(g.dim)).max()
    if sq > tol.eq_tol:
        raise NotInvolutive(f"phi^2 differs from the identity by {sq:.3e}")
    X = g.elements
    comm = np.einsum("aij,bjk->abik", X, X) - np.einsum("bij,ajk->abik", X, X)
    FX = apply_involution(phi, X)
    fcomm = np.einsum("aij,bjk->abik", FX, FX) - np.einsum("bij,ajk->abik", FX, FX)
    hom = np.abs(apply_involution(phi, comm) - fcomm).max()
    if hom > tol.eq_tol:
        raise NotAutomorphism(f"phi does not preserve brackets (error {hom:.3e})")
    k_rows = null_space(Phi - np.eye(g.dim), tol)
    m_rows = null_space(Phi + np.eye(g.dim), tol)
    k = Subspace(g, canonical_rows(k_rows, tol) if len(k_rows) else k_rows)
    m = Subspace(g, canonical_rows(m_rows, tol) if len(m_rows) else m_rows)
    h = cartan_subalgebra(m, seed=seed, tol=tol) if m.dim else m
    return CartanDecomposition(k, m, h, phi)


@dataclass(frozen=True)
class SymmetricReport:
    kk_residual: float
    km_residual: float
    mm_residual: float

    def is_symmetric(self, tol: float = 1e-8) -> bool:
        return max(self.kk_residual, self.km_residual, self.mm_residual) < tol

    def is_reductive(self, tol: float = 1e-8) -> bool:
        return max(self.kk_residual, self.km_residual) < tol


def verify_symmetric(k: Subspace, m: Subspace) -> SymmetricReport:
    """Residuals of ``[k,k]`` outside k, ``[k,m]`` outside m and ``[m,m]`` outside k."""
    return SymmetricReport(
        kk_residual=bracket_residual(k, k, k),
        km_residual=bracket_residual(k, m, m),
        mm_residual=bracket_residual(m, m, k),
    )


_SP_CACHE: dict = {}


def sp_basis(n: int) -> AlgebraBasis:
    """Compact symplectic algebra sp(n) inside su(2n): the fixed points of the AII involution."""
    if n not in _SP_CACHE:
        split = split_by_involution(su_basis(2 * n), Involution("AII", n=n))
        _SP_CACHE[n] = AlgebraBasis(split.k.matrices())
    return _SP_CACHE[n]
