"""
Matrix Lie algebras in coordinates.

An :class:`AlgebraBasis` holds skew-Hermitian matrices that are orthonormal
under ``Tr(A^dagger B)``. With that normalization the trace inner product of
two algebra elements is the Euclidean dot product of their real coordinate
vectors, so complements, commutants and intersections all reduce to null
spaces of real matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, EmptySubspace, NotSubalgebra
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    canonical_rows,
    commutator,
    dagger,
    null_space,
    orthonormalize_rows,
)
from .pauli import pauli_label, pauli_matrix, pauli_words


def _is_pow2(N):
    return N > 0 and N & (N - 1) == 0


@dataclass(frozen=True, eq=False)
class AlgebraBasis:
    """Ordered orthonormal basis of a real matrix Lie algebra.

    Parameters
    ----------
    elements : ndarray, shape (d, N, N)
        Skew-Hermitian matrices with ``Tr(X_i^dagger X_j) = delta_ij``.
    labels : tuple of str
        Human-readable names, one per element.
    """

    elements: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        els = np.asarray(self.elements, dtype=complex)
        if els.ndim != 3 or els.shape[1] != els.shape[2]:
            raise DimensionMismatch("elements must have shape (d, N, N)")
        els.setflags(write=False)
        object.__setattr__(self, "elements", els)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(_label(X) for X in els))

    @property
    def dim(self) -> int:
        return self.elements.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.elements.shape[1]

    def __len__(self):
        return self.dim

    def gram(self) -> np.ndarray:
        E = self.elements.reshape(self.dim, -1)
        return E.conj() @ E.T

    def coords(self, X) -> np.ndarray:
        """Real coordinates ``Re Tr(X_j^dagger X)``; ``X`` may be a stack."""
        X = np.asarray(X)
        if X.shape[-2:] != self.elements.shape[1:]:
            raise DimensionMismatch(f"matrix of shape {X.shape[-2:]} vs basis of size {self.ambient_dim}")
        return np.einsum("jab,...ab->...j", self.elements.conj(), X).real

    def combine(self, coords) -> np.ndarray:
        """Matrices ``sum_j c_j X_j`` for a coordinate vector or a stack of them."""
        return np.tensordot(np.asarray(coords, dtype=float), self.elements, axes=(-1, 0))

    def subspace(self) -> "Subspace":
        return Subspace(self, np.eye(self.dim))

    @classmethod
    def from_matrices(cls, mats, labels=None, tol: Tolerance | None = None) -> "AlgebraBasis":
        """Orthonormalize skew-Hermitian matrices (Gram-Schmidt, given order)."""
        tol = tol or DEFAULT_TOL
        mats = np.asarray(mats, dtype=complex)
        ub = u_basis(mats.shape[-1])
        c, res = _expand(ub, mats)
        if np.any(res > tol.eq_tol * (1 + np.linalg.norm(mats.reshape(len(mats), -1), axis=1))):
            raise ValueError("generators must be skew-Hermitian")
        rows = orthonormalize_rows(c, tol)
        keep_labels = labels is not None and len(rows) == len(mats) and _already_orthogonal(c)
        return cls(ub.combine(rows), tuple(labels) if keep_labels else ())


def _already_orthogonal(c):
    G = c @ c.T
    return np.allclose(G, np.diag(np.diag(G)), atol=1e-12)


def _label(X) -> str:
    N = X.shape[0]
    if not _is_pow2(N):
        return "<matrix>"
    return pauli_label(np.asarray(X) * np.sqrt(N))


def _expand(basis: AlgebraBasis, X):
    c = basis.coords(X)
    rest = np.asarray(X) - basis.combine(c)
    res = np.linalg.norm(rest.reshape(*rest.shape[:-2], -1), axis=-1)
    return c, res


def expand_in_basis(X, basis: AlgebraBasis):
    """Coordinates of ``X`` and the norm of what the basis does not capture.

    ``X`` belongs to the span exactly when the residual is below ``eq_tol``.
    """
    return _expand(basis, X)


def pauli_basis(n: int, words=None) -> AlgebraBasis:
    """``i P / sqrt(2^n)`` for the given Pauli words (default: all but the identity)."""
    words = list(words) if words is not None else pauli_words(n)
    N = 2**n
    els = np.array([1j * pauli_matrix(w) / np.sqrt(N) for w in words])
    return AlgebraBasis(els, tuple("i" + w for w in words))


def u_basis(N: int) -> AlgebraBasis:
    """Orthonormal basis of u(N); Pauli words when N is a power of two."""
    return _u_basis_cached(N)


_U_CACHE: dict = {}


def _u_basis_cached(N):
    if N not in _U_CACHE:
        if _is_pow2(N):
            n = N.bit_length() - 1
            _U_CACHE[N] = pauli_basis(n, pauli_words(n, include_identity=True)) if n else AlgebraBasis(
                np.array([[[1j]]]), ("iI",)
            )
        else:
            _U_CACHE[N] = AlgebraBasis(np.array(_matrix_unit_basis(N, traceless=False)))
    return _U_CACHE[N]


def _matrix_unit_basis(N, traceless):
    els = []
    for j in range(N):
        for k in range(j + 1, N):
            E = np.zeros((N, N), complex)
            E[j, k], E[k, j] = 1, -1
            els.append(E / np.sqrt(2))
            F = np.zeros((N, N), complex)
            F[j, k] = F[k, j] = 1j
            els.append(F / np.sqrt(2))
    if traceless:
        for j in range(N - 1):
            d = np.zeros(N)
            d[: j + 1] = 1
            d[j + 1] = -(j + 1)
            els.append(1j * np.diag(d) / np.linalg.norm(d))
    else:
        for j in range(N):
            D = np.zeros((N, N), complex)
            D[j, j] = 1j
            els.append(D)
    return els


def su_basis(N: int) -> AlgebraBasis:
    """Orthonormal basis of su(N); normalized Pauli words when N is a power of two."""
    if _is_pow2(N) and N > 1:
        return pauli_basis(N.bit_length() - 1)
    return AlgebraBasis(np.array(_matrix_unit_basis(N, traceless=True)))


def so_basis(N: int) -> AlgebraBasis:
    """Real antisymmetric matrices; Pauli words with an odd number of Y when N = 2^n."""
    if _is_pow2(N) and N > 1:
        n = N.bit_length() - 1
        return pauli_basis(n, [w for w in pauli_words(n) if w.count("Y") % 2 == 1])
    els = []
    for j in range(N):
        for k in range(j + 1, N):
            E = np.zeros((N, N), complex)
            E[j, k], E[k, j] = 1, -1
            els.append(E / np.sqrt(2))
    return AlgebraBasis(np.array(els))


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of an ambient algebra, stored as orthonormal coordinate rows."""

    ambient: AlgebraBasis
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float).reshape(-1, self.ambient.dim)
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def dim(self) -> int:
        return self.coords.shape[0]

    def __len__(self):
        return self.dim

    def matrices(self) -> np.ndarray:
        return self.ambient.combine(self.coords)

    def labels(self) -> list[str]:
        return [_label(X) for X in self.matrices()]

    def projector(self) -> np.ndarray:
        return self.coords.T @ self.coords

    def outside(self, c) -> np.ndarray:
        """Norm of the component of coordinate vector(s) ``c`` orthogonal to this subspace."""
        c = np.atleast_2d(c)
        return np.linalg.norm(c - (c @ self.coords.T) @ self.coords, axis=1)

    def residual(self, X) -> np.ndarray:
        """Distance of matrix (or stack) ``X`` from the subspace, counting parts outside the ambient."""
        X = np.asarray(X)
        single = X.ndim == 2
        X = X.reshape(-1, *X.shape[-2:])
        c, amb_res = _expand(self.ambient, X)
        out = np.sqrt(self.outside(c) ** 2 + amb_res**2)
        return out[0] if single else out

    def contains(self, X, tol: Tolerance | None = None) -> bool:
        tol = tol or DEFAULT_TOL
        return bool(np.all(self.residual(X) < tol.eq_tol * max(1.0, np.linalg.norm(X))))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient.dim})"


def subspace_from_matrices(ambient: AlgebraBasis, mats, tol: Tolerance | None = None, canonical=False) -> Subspace:
    """Subspace spanned by matrices that must lie in the ambient algebra."""
    tol = tol or DEFAULT_TOL
    mats = np.asarray(mats, dtype=complex).reshape(-1, ambient.ambient_dim, ambient.ambient_dim)
    c, res = _expand(ambient, mats)
    scale = 1 + np.linalg.norm(mats.reshape(len(mats), -1), axis=1)
    if np.any(res > tol.eq_tol * scale):
        bad = int(np.argmax(res / scale))
        raise DimensionMismatch(f"element {bad} is not in the ambient algebra (residual {res[bad]:.3e})")
    rows = canonical_rows(c, tol) if canonical else orthonormalize_rows(c, tol)
    return Subspace(ambient, rows)


def _sub(ambient, rows, tol, canonical=True):
    rows = np.asarray(rows, dtype=float).reshape(-1, ambient.dim)
    if rows.shape[0] and canonical:
        rows = canonical_rows(rows, tol)
    return Subspace(ambient, rows)


def subspace_distance(a: Subspace, b: Subspace) -> float:
    """Largest residual of ``a``'s basis outside ``b`` and vice versa (0 for equal spans)."""
    if a.dim == 0 and b.dim == 0:
        return 0.0
    ra = b.outside(a.coords).max() if a.dim else 0.0
    rb = a.outside(b.coords).max() if b.dim else 0.0
    return float(max(ra, rb))


def spans_equal(a: Subspace, b: Subspace, tol: float = 1e-8) -> bool:
    return a.dim == b.dim and subspace_distance(a, b) < tol


def intersection(a: Subspace, b: Subspace, tol: Tolerance | None = None) -> Subspace:
    tol = tol or DEFAULT_TOL
    if a.dim == 0 or b.dim == 0:
        return Subspace(a.ambient, np.zeros((0, a.ambient.dim)))
    # c with (1 - P_b) a^T c = 0
    M = a.coords.T - b.coords.T @ (b.coords @ a.coords.T)
    ker = null_space(M, tol)
    return _sub(a.ambient, ker @ a.coords, tol)


def complement_within(sub: Subspace, outer: Subspace, tol: Tolerance | None = None) -> Subspace:
    """Orthogonal complement of ``sub`` inside ``outer``."""
    tol = tol or DEFAULT_TOL
    if outer.dim == 0:
        return outer
    if sub.dim == 0:
        return _sub(outer.ambient, outer.coords, tol)
    ker = null_space(sub.coords @ outer.coords.T, tol)
    return _sub(outer.ambient, ker @ outer.coords, tol)


def horizontal_complement(k: Subspace, tol: Tolerance | None = None) -> Subspace:
    """``m = k^perp`` inside the ambient algebra."""
    tol = tol or DEFAULT_TOL
    if k.dim == 0:
        return _sub(k.ambient, np.eye(k.ambient.dim), tol)
    return _sub(k.ambient, null_space(k.coords, tol), tol)


def _realify(C):
    C = C.reshape(C.shape[0], -1)
    return np.concatenate([C.real, C.imag], axis=1)


def _joint_kernel(candidates: np.ndarray, fixed: np.ndarray, tol) -> np.ndarray:
    """Coefficient vectors c with [sum_a c_a candidates_a, F] = 0 for every F in ``fixed``."""
    if len(fixed) == 0:
        return np.eye(len(candidates))
    comms = np.einsum("aij,fjk->afik", candidates, fixed) - np.einsum("fij,ajk->afik", fixed, candidates)
    M = _realify(comms.reshape(len(candidates), -1, candidates.shape[-1]).reshape(len(candidates), -1)).T
    return null_space(M, tol)


def commutant(k: Subspace, within: Subspace | None = None, tol: Tolerance | None = None) -> Subspace:
    """Elements of the ambient algebra (or of ``within``) commuting with all of ``k``.

    All the adjoint conditions are stacked into one real matrix and solved
    with a single null-space call.
    """
    tol = tol or DEFAULT_TOL
    within = within if within is not None else k.ambient.subspace()
    if within.dim == 0:
        return within
    ker = _joint_kernel(within.matrices(), k.matrices(), tol)
    return _sub(k.ambient, ker @ within.coords, tol)


def bracket_residual(a: Subspace, b: Subspace, target: Subspace) -> float:
    """Worst norm of ``[A_i, B_j]`` outside ``target`` over basis pairs."""
    if a.dim == 0 or b.dim == 0:
        return 0.0
    A, B = a.matrices(), b.matrices()
    comms = np.einsum("aij,bjk->abik", A, B) - np.einsum("bij,ajk->abik", B, A)
    comms = comms.reshape(-1, *A.shape[1:])
    return float(np.max(target.residual(comms)))


def check_subalgebra(k: Subspace, tol: Tolerance | None = None) -> float:
    """Closure residual of ``k``; raises :class:`NotSubalgebra` above ``eq_tol``."""
    tol = tol or DEFAULT_TOL
    res = bracket_residual(k, k, k)
    if res > tol.eq_tol:
        raise NotSubalgebra(f"[k, k] leaves k with residual {res:.3e}")
    return res


def center(k: Subspace, tol: Tolerance | None = None) -> Subspace:
    """``z(k)``: the commutant of ``k`` computed inside ``k``."""
    tol = tol or DEFAULT_TOL
    check_subalgebra(k, tol)
    return commutant(k, within=k, tol=tol)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """``g = r + g^k_o + z(k) + k_o`` with ``m = r + g^k_o`` and ``k = z(k) + k_o``."""

    r: Subspace
    gk_o: Subspace
    z_k: Subspace
    k_o: Subspace
    k: Subspace
    m: Subspace
    gk: Subspace
    residuals: dict = field(default_factory=dict)

    @property
    def dims(self) -> tuple:
        return (self.r.dim, self.gk_o.dim, self.z_k.dim, self.k_o.dim)

    @property
    def ambient(self) -> AlgebraBasis:
        return self.k.ambient


def full_decomposition(g: AlgebraBasis, k: Subspace, tol: Tolerance | None = None) -> Decomposition:
    """Split ``g`` relative to the subalgebra ``k``.

    Examples
    --------
    >>> g = pauli_basis(1)
    >>> k = subspace_from_matrices(g, [1j * pauli_matrix("Z")])
    >>> full_decomposition(g, k).dims
    (2, 0, 1, 0)
    """
    tol = tol or DEFAULT_TOL
    if k.ambient is not g and (k.ambient.elements.shape != g.elements.shape or not np.allclose(k.ambient.elements, g.elements)):
        raise DimensionMismatch("k must be expressed in the basis of g")
    kk_res = check_subalgebra(k, tol)
    m = horizontal_complement(k, tol)
    gk = commutant(k, tol=tol)
    z = intersection(gk, k, tol)
    gk_o = intersection(gk, m, tol)
    if z.dim + gk_o.dim != gk.dim:
        raise ArithmeticError("commutant does not split across k and m; tolerance too loose")
    r = complement_within(gk_o, m, tol)
    k_o = complement_within(z, k, tol)
    residuals = {"kk": kk_res, "km": bracket_residual(k, m, m)}
    return Decomposition(r, gk_o, z, k_o, k=k, m=m, gk=gk, residuals=residuals)


def cartan_subalgebra(m: Subspace, seed=None, tol: Tolerance | None = None) -> Subspace:
    """Maximal abelian subspace of ``m`` grown one commuting element at a time.

    Parameters
    ----------
    m : Subspace
        Horizontal subspace of a symmetric split.
    seed : ndarray, optional
        First element, as a matrix or as ambient coordinates. Defaults to the
        first basis vector of ``m``. Later elements are the first vectors of
        the canonical kernel basis that enlarge the span.
    """
    tol = tol or DEFAULT_TOL
    if m.dim == 0:
        raise EmptySubspace("m has dimension 0")
    amb = m.ambient
    if seed is None:
        h = m.coords[:1].copy()
    else:
        seed = np.asarray(seed)
        c = amb.coords(seed) if seed.ndim == 2 else seed.astype(float)
        if m.outside(c)[0] > tol.eq_tol * max(1.0, np.linalg.norm(c)):
            raise ValueError("seed is not an element of m")
        h = (c / np.linalg.norm(c))[None, :]
    M = m.matrices()
    while True:
        ker = _joint_kernel(M, amb.combine(h), tol)
        cand = canonical_rows(ker @ m.coords, tol) if len(ker) else np.zeros((0, amb.dim))
        nxt = None
        for v in cand:
            w = v - (v @ h.T) @ h
            if np.linalg.norm(w) > 1e-7:
                nxt = w / np.linalg.norm(w)
                break
        if nxt is None:
            return Subspace(amb, h)
        h = np.vstack([h, nxt])


def is_ad_invariant(k_sample, m: Subspace, tol: Tolerance | None = None):
    """Check ``k M k^dagger`` stays in ``m`` for every basis element; returns (ok, worst residual)."""
    tol = tol or DEFAULT_TOL
    k_sample = np.asarray(k_sample)
    if m.dim == 0:
        return True, 0.0
    conj = k_sample @ m.matrices() @ dagger(k_sample)
    worst = float(np.max(m.residual(conj)))
    return worst < tol.eq_tol, worst


def generate_dla(generators, tol: Tolerance | None = None) -> AlgebraBasis:
    """Lie closure of skew-Hermitian generators by breadth-first nested commutators."""
    tol = tol or DEFAULT_TOL
    gens = np.asarray(generators, dtype=complex)
    if gens.ndim == 2:
        gens = gens[None]
    ub = u_basis(gens.shape[-1])
    c, res = _expand(ub, gens)
    if np.any(res > tol.eq_tol * (1 + np.abs(gens).max())):
        raise ValueError("generators must be skew-Hermitian")
    Q = orthonormalize_rows(c, tol)
    queue = list(range(len(Q)))
    while queue:
        i = queue.pop(0)
        Xi = ub.combine(Q[i])
        mats = ub.combine(Q)
        comms = np.einsum("ij,ajk->aik", Xi, mats) - np.einsum("aij,jk->aik", mats, Xi)
        cc = ub.coords(comms)
        for v in cc:
            w = v - (v @ Q.T) @ Q
            w = w - (w @ Q.T) @ Q
            nw = np.linalg.norm(w)
            if nw > 1e-8 * max(1.0, np.linalg.norm(v)):
                Q = np.vstack([Q, w / nw])
                queue.append(len(Q) - 1)
    rows = canonical_rows(Q, tol)
    return AlgebraBasis(ub.combine(rows))


def dla_dimension(generators, tol: Tolerance | None = None) -> int:
    return generate_dla(generators, tol).dim
