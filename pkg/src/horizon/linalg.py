"""
Dense complex linear algebra used throughout the package.

Every matrix function here goes through a Hermitian eigendecomposition. All
inputs in this package are (skew-)Hermitian or unitary and at most 256x256,
so the spectral route is exact up to rounding and it hands us the Frechet
derivative of the exponential for free.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import BranchAmbiguity, NotHermitian, NotSkewHermitian


@dataclass(frozen=True)
class Tolerance:
    """Numerical cutoffs.

    Parameters
    ----------
    rank_tol : float
        Singular values below ``rank_tol * max(s_max, 1)`` count as zero.
    eq_tol : float
        Elementwise tolerance for equality and membership checks.
    """

    rank_tol: float = 1e-10
    eq_tol: float = 1e-9

    def __post_init__(self):
        if not (self.rank_tol > 0 and self.eq_tol > 0):
            raise ValueError("tolerances must be strictly positive")


def default_tolerance() -> Tolerance:
    """Tolerance from ``HORIZON_TOL`` (``"rank,eq"`` or a single float), else defaults."""
    raw = os.environ.get("HORIZON_TOL", "").strip()
    if not raw:
        return Tolerance()
    parts = [float(p) for p in raw.replace(";", ",").split(",") if p.strip()]
    if len(parts) == 1:
        return Tolerance(parts[0], max(parts[0], Tolerance().eq_tol))
    return Tolerance(parts[0], parts[1])


DEFAULT_TOL = default_tolerance()


def _tol(tol):
    return DEFAULT_TOL if tol is None else tol


def dagger(A):
    return np.conj(np.swapaxes(A, -1, -2))


def commutator(A, B):
    return A @ B - B @ A


def is_hermitian(H, tol: Tolerance | None = None) -> bool:
    H = np.asarray(H)
    return H.ndim == 2 and H.shape[0] == H.shape[1] and np.allclose(H, dagger(H), rtol=0, atol=_tol(tol).eq_tol)


def is_skew_hermitian(A, tol: Tolerance | None = None) -> bool:
    A = np.asarray(A)
    return A.ndim == 2 and A.shape[0] == A.shape[1] and np.allclose(A, -dagger(A), rtol=0, atol=_tol(tol).eq_tol)


def is_unitary(U, tol: Tolerance | None = None) -> bool:
    U = np.asarray(U)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        return False
    return np.allclose(dagger(U) @ U, np.eye(U.shape[0]), rtol=0, atol=_tol(tol).eq_tol)


def null_space(M, tol: Tolerance | None = None) -> np.ndarray:
    """Orthonormal basis of ``{v : M v = 0}``, returned as the rows of an array.

    The rank cutoff is ``rank_tol * max(s_max, 1)``. The floor at one keeps a
    matrix whose entries are pure rounding noise (say 1e-16) from being
    treated as full rank, which a purely relative cutoff would do.

    Examples
    --------
    >>> null_space(np.array([[1.0, 0.0]]))
    array([[0., 1.]])
    """
    tol = _tol(tol)
    M = np.atleast_2d(np.asarray(M))
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n, dtype=M.dtype)
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    cutoff = tol.rank_tol * max(s[0] if s.size else 0.0, 1.0)
    rank = int(np.sum(s > cutoff))
    kernel = vh[rank:].conj()
    if not np.iscomplexobj(M):
        kernel = kernel.real
    return np.ascontiguousarray(kernel)


def orthonormalize_rows(rows, tol: Tolerance | None = None) -> np.ndarray:
    """Gram-Schmidt (two passes) over rows in the given order, dropping dependent ones."""
    tol = _tol(tol)
    rows = np.atleast_2d(np.asarray(rows))
    out = []
    for v in rows:
        norm0 = np.linalg.norm(v)
        if norm0 <= tol.rank_tol:
            continue
        w = v / norm0
        for _ in range(2):
            for q in out:
                w = w - np.vdot(q, w) * q
        norm = np.linalg.norm(w)
        if norm > 1e3 * tol.rank_tol:
            out.append(w / norm)
    if not out:
        return np.zeros((0, rows.shape[1]), dtype=rows.dtype)
    return np.array(out)


def canonical_rows(rows, tol: Tolerance | None = None) -> np.ndarray:
    """Deterministic orthonormal basis of the row span.

    Rows are brought to reduced row echelon form (columns scanned left to
    right, partial pivoting) and then orthonormalized in order. Spans that
    are aligned with the coordinate axes come back as the axes themselves.
    """
    tol = _tol(tol)
    R = np.array(np.atleast_2d(rows), dtype=np.result_type(np.asarray(rows).dtype, float), copy=True)
    if R.shape[0] == 0:
        return R
    n_rows, n_cols = R.shape
    pivot_tol = 1e-8
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = r + int(np.argmax(np.abs(R[r:, c])))
        if abs(R[p, c]) <= pivot_tol:
            continue
        R[[r, p]] = R[[p, r]]
        R[r] = R[r] / R[r, c]
        for i in range(n_rows):
            if i != r and R[i, c] != 0:
                R[i] = R[i] - R[i, c] * R[r]
        r += 1
    R = R[:r]
    R[np.abs(R) < 1e-14] = 0
    return orthonormalize_rows(R, tol)


def herm_eig(H, tol: Tolerance | None = None):
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix."""
    H = np.asarray(H)
    if not is_hermitian(H, tol):
        raise NotHermitian("matrix is not Hermitian within eq_tol")
    H = 0.5 * (H + dagger(H))
    return np.linalg.eigh(H)


def _skew_eig(A, tol):
    A = np.asarray(A)
    if not is_skew_hermitian(A, tol):
        raise NotSkewHermitian("matrix is not skew-Hermitian within eq_tol")
    H = 0.5j * (A - dagger(A))  # i A, Hermitian
    return np.linalg.eigh(H)


def expm_skew(A, tol: Tolerance | None = None) -> np.ndarray:
    """``exp(A)`` for skew-Hermitian ``A`` via the spectrum of ``iA``."""
    w, V = _skew_eig(A, tol)
    return (V * np.exp(-1j * w)) @ dagger(V)


def logm_unitary(U, tol: Tolerance | None = None) -> np.ndarray:
    """Traceless logarithm of ``U`` up to global phase.

    The global phase is divided out with the principal N-th root of the
    determinant and the principal logarithm is taken; if its eigenphases
    then sum to ``2 pi k`` they are shifted by ``2 pi k / N`` so the result
    is traceless. ``expm_skew(logm_unitary(U))`` equals ``U`` up to phase.

    Raises
    ------
    BranchAmbiguity
        If some eigenphase lies within ``eq_tol`` of pi.
    """
    tol = _tol(tol)
    U = np.asarray(U, dtype=complex)
    if not np.allclose(dagger(U) @ U, np.eye(U.shape[0]), rtol=0, atol=max(tol.eq_tol, 1e-8)):
        raise ValueError("matrix is not unitary")
    N = U.shape[0]
    det = np.linalg.det(U)
    U = U * np.exp(-1j * np.angle(det) / N)
    # complex Schur of a normal matrix is diagonal, with a unitary Z
    T, Z = sla.schur(U, output="complex")
    phases = np.angle(np.diag(T))
    if np.any(np.pi - np.abs(phases) < tol.eq_tol):
        raise BranchAmbiguity("eigenphase on the branch cut at pi")
    # the phases of an SU(N) matrix can sum to 2 pi k; shifting by the
    # matching N-th root of unity gives the traceless logarithm
    phases = phases - phases.sum() / N
    A = (Z * (1j * phases)) @ dagger(Z)
    return 0.5 * (A - dagger(A))


def _loewner(w):
    # divided differences of t -> exp(-i t) on the spectrum of iA, in a
    # cancellation-free form: exp(-i(a+b)/2) * sinc((a-b)/2)
    half_sum = 0.5 * (w[:, None] + w[None, :])
    diff = w[:, None] - w[None, :]
    return np.exp(-1j * half_sum) * np.sinc(diff / (2 * np.pi))


def dexpm(A, dA, tol: Tolerance | None = None) -> np.ndarray:
    """Directional derivative ``d/dt exp(A + t dA)`` at ``t = 0``.

    Uses the Daleckii-Krein formula in the eigenbasis of ``iA``. ``dA`` may
    also be a stack of directions with shape ``(P, N, N)``.
    """
    w, V = _skew_eig(A, tol)
    dA = np.asarray(dA)
    L = _loewner(w)
    G = dagger(V) @ dA @ V
    return V @ (G * L) @ dagger(V)


def effective_generators(A, directions, tol: Tolerance | None = None):
    """``U`` and the stack ``Omega_j = U^dagger dexpm(A, H_j)`` for ``U = exp(A)``."""
    w, V = _skew_eig(A, tol)
    L = _loewner(w)
    Vd = dagger(V)
    U = (V * np.exp(-1j * w)) @ Vd
    dU = V @ ((Vd @ np.asarray(directions) @ V) * L) @ Vd
    return U, dagger(U) @ dU
