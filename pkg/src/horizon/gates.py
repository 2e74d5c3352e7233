"""
Parameterized gates built from a homogeneous-space split.

Every gate is a product of *factors*, each either a fixed matrix or the
exponential of a linear combination of skew-Hermitian generators. A plain
horizontal gate ``exp(sum theta_j M_j)`` is a single factor; the KAK form
``e^B e^h e^-B`` and the CNOT circuit for two-qubit horizontal gates are
longer products. The same representation yields analytic derivatives for the
simulator through the effective-generator formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParamLengthMismatch, SymmetryLeakage, UnknownSpace
from .linalg import DEFAULT_TOL, Tolerance, dagger, effective_generators, expm_skew, logm_unitary
from .pauli import pauli_matrix
from .spaces import get_space, homogeneous_space

KINDS = ("horizontal", "equivariant", "kak", "kak-circuit", "stabilizer", "full")


# ---------------------------------------------------------------- primitives

def rx(theta) -> np.ndarray:
    return expm_skew(-0.5j * theta * pauli_matrix("X"))


def ry(theta) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def r3(phi, theta, omega) -> np.ndarray:
    """General SU(2) rotation ``RZ(omega) RY(theta) RZ(phi)``."""
    return rz(omega) @ ry(theta) @ rz(phi)


def cnot(control: int = 0, target: int = 1, n_qubits: int = 2) -> np.ndarray:
    """CNOT on an ``n_qubits`` register; qubit 0 is the leftmost Kronecker factor."""
    if control == target or not (0 <= control < n_qubits and 0 <= target < n_qubits):
        raise ValueError("control and target must be distinct qubits of the register")
    dim = 2**n_qubits
    idx = np.arange(dim)
    cbit = (idx >> (n_qubits - 1 - control)) & 1
    out = idx ^ (cbit << (n_qubits - 1 - target))
    U = np.zeros((dim, dim), complex)
    U[out, idx] = 1
    return U


def _on(qubit: int, M, n_qubits: int = 2) -> np.ndarray:
    ops = [np.eye(2)] * n_qubits
    ops[qubit] = M
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


# ------------------------------------------------------------------- factors

@dataclass(frozen=True, eq=False)
class Factor:
    """``fixed`` if given, else ``exp(sum_j theta[params[j]] * generators[j])``."""

    params: tuple = ()
    generators: np.ndarray | None = None
    fixed: np.ndarray | None = None

    def matrix(self, theta) -> np.ndarray:
        if self.fixed is not None:
            return self.fixed
        A = np.tensordot(theta[list(self.params)], self.generators, axes=(0, 0))
        return expm_skew(A)

    def matrix_and_derivatives(self, theta):
        if self.fixed is not None:
            return self.fixed, None
        A = np.tensordot(theta[list(self.params)], self.generators, axes=(0, 0))
        U, omegas = effective_generators(A, self.generators)
        return U, U @ omegas


def _rot_factor(idx, pauli, qubit, n_qubits, sign=1.0):
    # exp(-i theta P / 2) on one qubit
    G = sign * _on(qubit, -0.5j * pauli_matrix(pauli), n_qubits)
    return Factor((idx,), G[None])


def _fixed(M):
    return Factor(fixed=np.asarray(M, dtype=complex))


def _product(factors, theta):
    U = None
    for f in factors:
        M = f.matrix(theta)
        U = M if U is None else M @ U
    return U


# ------------------------------------------------------------------ GateSpec

@dataclass(frozen=True, eq=False)
class GateSpec:
    """A parameterized gate: ``U(theta) = F_m(theta) ... F_1(theta)``.

    Parameters
    ----------
    kind : str
        One of ``horizontal, equivariant, kak, kak-circuit, stabilizer, full``.
    generators : ndarray, shape (P, N, N)
        For exponential kinds, ``U = exp(sum theta_j generators_j)``. For KAK
        kinds this holds the horizontal basis the gate lives in.
    factors : tuple of Factor
        The product, first-applied factor first.
    """

    kind: str
    space_id: str
    generators: np.ndarray
    factors: tuple
    param_count: int
    labels: tuple = ()
    n_qubits: int = 1
    extra: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.generators.shape[-1]

    def check_theta(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float).ravel()
        if theta.size != self.param_count:
            raise ParamLengthMismatch(f"{self.space_id} ({self.kind}) takes {self.param_count} parameters, got {theta.size}")
        return theta

    def unitary(self, theta) -> np.ndarray:
        return gate_unitary(self, theta)

    def unitary_and_derivatives(self, theta):
        """``U`` and the stack ``dU/dtheta_p`` of shape ``(P, N, N)``."""
        theta = self.check_theta(theta)
        mats, ders = zip(*(f.matrix_and_derivatives(theta) for f in self.factors))
        n = len(mats)
        N = self.dim
        prefix = [np.eye(N, dtype=complex)]
        for M in mats:
            prefix.append(M @ prefix[-1])
        suffix = [np.eye(N, dtype=complex)] * (n + 1)
        for i in range(n - 1, -1, -1):
            suffix[i] = suffix[i + 1] @ mats[i]
        dU = np.zeros((self.param_count, N, N), complex)
        for i, (f, d) in enumerate(zip(self.factors, ders)):
            if d is None:
                continue
            left, right = suffix[i + 1], prefix[i]
            for j, p in enumerate(f.params):
                dU[p] += left @ d[j] @ right
        return prefix[-1], dU

    def algebra_element(self, theta) -> np.ndarray:
        """``sum theta_j M_j`` for exponential kinds."""
        if self.kind in ("kak", "kak-circuit"):
            raise TypeError("KAK gates are products, not a single exponential")
        theta = self.check_theta(theta)
        return np.tensordot(theta, self.generators, axes=(0, 0))

    def to_json(self, theta=None) -> dict:
        doc = {
            "kind": self.kind,
            "space_id": self.space_id,
            "qubit_span": list(range(self.n_qubits)),
            "param_count": self.param_count,
            "labels": list(self.labels),
        }
        if theta is not None:
            doc["params"] = [float(t) for t in np.ravel(theta)]
        return doc


def gate_unitary(spec: GateSpec, theta) -> np.ndarray:
    """Evaluate the gate; ``theta`` must have ``spec.param_count`` entries."""
    theta = spec.check_theta(theta)
    return _product(spec.factors, theta)


def exponential_gate(kind, space_id, generators, labels=(), n_qubits=None) -> GateSpec:
    G = np.asarray(generators, dtype=complex)
    N = G.shape[-1]
    n_qubits = n_qubits or max(1, int(round(np.log2(N))))
    return GateSpec(kind, space_id, G, (Factor(tuple(range(len(G))), G),), len(G), tuple(labels), n_qubits)


# ------------------------------------------------------ symmetry reparameterization

def reparameterize_under_symmetry(spec: GateSpec, k, theta, tol: Tolerance | None = None) -> np.ndarray:
    """Angles ``theta'`` with ``k^dagger A(theta) k = A(theta')``, so ``U(theta) k = k U(theta')``.

    Raises
    ------
    SymmetryLeakage
        If ``k^dagger A k`` has a component outside the generator span.
    """
    tol = tol or DEFAULT_TOL
    A = spec.algebra_element(theta)
    k = np.asarray(k, dtype=complex)
    B = dagger(k) @ A @ k
    G = spec.generators
    gram = np.einsum("aij,bij->ab", G.conj(), G).real
    rhs = np.einsum("aij,ij->a", G.conj(), B).real
    theta_new = np.linalg.solve(gram, rhs)
    leak = np.linalg.norm(B - np.tensordot(theta_new, G, axes=(0, 0)))
    if leak > tol.eq_tol * max(1.0, np.linalg.norm(A)):
        raise SymmetryLeakage(f"conjugated generator leaves the gate's span (residual {leak:.3e})")
    return theta_new


# ------------------------------------------------------------------- KAK form

def kak_gate_unitary(alpha, phi, k_generators, h_generators) -> np.ndarray:
    """``exp(B) exp(h) exp(-B)`` with ``B = sum alpha_j K_j`` and ``h = sum phi_j H_j``."""
    B = np.tensordot(np.asarray(alpha, float), np.asarray(k_generators), axes=(0, 0))
    h = np.tensordot(np.asarray(phi, float), np.asarray(h_generators), axes=(0, 0))
    eB = expm_skew(B)
    return eB @ expm_skew(h) @ dagger(eB)


def _kak_factors(Kg, Hg):
    nk = len(Kg)
    kidx = tuple(range(nk))
    hidx = tuple(range(nk, nk + len(Hg)))
    return (Factor(kidx, -Kg), Factor(hidx, Hg), Factor(kidx, Kg))


# -------------------------------------------------- three-CNOT two-qubit block

# theta -> c with c = VATAN_LINEAR @ theta + VATAN_OFFSET; fitted once against
# exp(i(c1 XX + c2 YY + c3 ZZ)) up to global phase and frozen here
VATAN_LINEAR = np.array([[0.0, -0.5, 0.0], [0.0, 0.0, 0.5], [-0.5, 0.0, 0.0]])
VATAN_OFFSET = np.full(3, -np.pi / 4)


def vatan_coefficients(theta) -> np.ndarray:
    """Coefficients ``(c_XX, c_YY, c_ZZ)`` realized by :func:`vatan_block`."""
    return VATAN_LINEAR @ np.asarray(theta, float) + VATAN_OFFSET


def vatan_angles(c) -> np.ndarray:
    """Inverse of :func:`vatan_coefficients`."""
    return np.linalg.solve(VATAN_LINEAR, np.asarray(c, float) - VATAN_OFFSET)


def _vatan_factors(i1, i2, i3):
    # wire layout: qubit 0 is the upper wire. Besides the drawn gates the
    # block carries fixed Rz(pi/2) on qubit 1 before and Rz(-pi/2) on qubit 0
    # after; without them the product is not of the form exp(h).
    return (
        _fixed(_on(1, rz(np.pi / 2))),
        _fixed(cnot(1, 0)),
        _rot_factor(i1, "Z", 0, 2),
        _rot_factor(i2, "Y", 1, 2),
        _fixed(cnot(0, 1)),
        _rot_factor(i3, "Y", 1, 2),
        _fixed(cnot(1, 0)),
        _fixed(_on(0, rz(-np.pi / 2))),
    )


def vatan_block(theta1, theta2, theta3) -> np.ndarray:
    """Three-CNOT block equal to ``exp(i(c1 XX + c2 YY + c3 ZZ))`` up to global phase.

    The coefficients are given by :func:`vatan_coefficients`.
    """
    return _product(_vatan_factors(0, 1, 2), np.array([theta1, theta2, theta3], float))


def _r3_factors(base, qubit, dagger_=False):
    # R3(a) = RZ(a2) RY(a1) RZ(a0); its inverse is RZ(-a0) RY(-a1) RZ(-a2)
    seq = [(base, "Z"), (base + 1, "Y"), (base + 2, "Z")]
    if dagger_:
        return tuple(_rot_factor(i, P, qubit, 2, sign=-1.0) for i, P in reversed(seq))
    return tuple(_rot_factor(i, P, qubit, 2) for i, P in seq)


def kak_circuit_factors():
    """Factors of the nine-parameter circuit ``(R3^dag x R3^dag) V(theta) (R3 x R3)``.

    Parameter layout: ``alpha_1`` (3, upper qubit), ``alpha_2`` (3, lower
    qubit), then the block angles ``theta_1..theta_3``.
    """
    return (
        _r3_factors(0, 0) + _r3_factors(3, 1) + _vatan_factors(6, 7, 8) + _r3_factors(3, 1, True) + _r3_factors(0, 0, True)
    )


def kak_circuit_unitary(alpha1, alpha2, theta) -> np.ndarray:
    params = np.concatenate([np.ravel(alpha1), np.ravel(alpha2), np.ravel(theta)]).astype(float)
    return _product(kak_circuit_factors(), params)


# ------------------------------------------------ magic basis factorization

MAGIC = np.array([[1, 0, 0, 1j], [0, 1j, 1, 0], [0, 1j, -1, 0], [1, 0, 0, -1j]]) / np.sqrt(2)


def kak_factor_su4(U, tol: Tolerance | None = None):
    """Write ``U`` in ``exp(m)`` of SU(4)/(SU(2)xSU(2)) as ``K exp(i c.(XX,YY,ZZ)) K^dagger``.

    In the magic basis local unitaries become real orthogonal matrices and
    the horizontal elements become ``i`` times real symmetric matrices, so
    ``U`` turns into a symmetric unitary that a real orthogonal matrix
    diagonalizes.

    Returns
    -------
    K : ndarray
        Local unitary (a tensor product of two SU(2) elements).
    c : ndarray, shape (3,)
        Coefficients of ``XX, YY, ZZ``. Equality holds up to global phase.
    """
    tol = tol or DEFAULT_TOL
    U = np.asarray(U, dtype=complex)
    W = dagger(MAGIC) @ U @ MAGIC
    W = W * np.exp(-1j * np.angle(np.linalg.det(W)) / 4)
    if np.abs(W - W.T).max() > 1e-7:
        raise ValueError("U is not of the form exp(m) for this space")
    W = 0.5 * (W + W.T)
    t = 0.6180339887
    _, O = np.linalg.eigh(np.cos(t) * W.real + np.sin(t) * W.imag)
    if np.linalg.det(O) < 0:
        O[:, 0] = -O[:, 0]
    D = np.angle(np.diag(O.T @ W @ O))
    K = MAGIC @ O @ dagger(MAGIC)
    Hd = MAGIC @ np.diag(1j * D) @ dagger(MAGIC)
    c = np.array([np.trace(pauli_matrix(w) @ (-1j * Hd)).real / 4 for w in ("XX", "YY", "ZZ")])
    return K, c


# -------------------------------------------------------------- stabilizer gates

def stabilizer_generators(N: int, real: bool = False) -> np.ndarray:
    """``E_0j - E_j0`` and ``i(E_0j + E_j0)`` for ``j = 1..N-1``, interleaved per ``j``."""
    if N < 2:
        raise ValueError("N must be at least 2")
    gens = []
    for j in range(1, N):
        A = np.zeros((N, N), complex)
        A[0, j], A[j, 0] = 1, -1
        gens.append(A)
        if not real:
            B = np.zeros((N, N), complex)
            B[0, j] = B[j, 0] = 1j
            gens.append(B)
    return np.array(gens)


def stabilizer_gate_su_n_u_nm1(x, N: int) -> np.ndarray:
    """``exp([[0, x], [-x^dagger, 0]])`` for a complex vector ``x`` of length ``N - 1``."""
    x = np.asarray(x, dtype=complex).ravel()
    if N < 2:
        raise ValueError("N must be at least 2")
    if x.size != N - 1:
        raise ParamLengthMismatch(f"x must have length {N - 1}, got {x.size}")
    A = np.zeros((N, N), complex)
    A[0, 1:] = x
    A[1:, 0] = -x.conj()
    return expm_skew(A)


# --------------------------------------------------------------------- catalog

_DEFAULT_KIND = {"su4/u3": "stabilizer", "so4/so3": "stabilizer", "su4": "full", "so4": "full"}


def _scaled(sub):
    # Pauli-normalized scale: Tr(M^dagger M) = N, so theta is the coefficient of i P
    return sub.matrices() * np.sqrt(sub.ambient.ambient_dim)


def _pauli_labels(mats):
    from .pauli import pauli_label

    N = mats.shape[-1]
    return tuple(pauli_label(M) for M in mats) if N & (N - 1) == 0 else ()


def kak_gate_spec(space_id: str, seed=None) -> GateSpec:
    """KAK-form gate ``e^B e^h e^-B`` for a symmetric catalog space."""
    space = homogeneous_space(space_id)
    if space.cartan is None:
        raise UnknownSpace(f"{space_id} is not a symmetric space; no KAK form")
    if seed is None and space.space_id == "su2/u1":
        seed = 1j * pauli_matrix("Y")
    h = space.cartan_subalgebra(seed)
    Kg, Hg = _scaled(space.k), _scaled(h)
    n_q = max(1, int(round(np.log2(space.g.ambient_dim))))
    return GateSpec(
        "kak",
        space.space_id,
        _scaled(space.m),
        _kak_factors(Kg, Hg),
        len(Kg) + len(Hg),
        _pauli_labels(Kg) + _pauli_labels(Hg),
        n_q,
        {"k_generators": Kg, "h_generators": Hg},
    )


def gate_catalog(space_id: str, kind: str | None = None) -> GateSpec:
    """Gate for a catalog space. ``space_id`` may carry a ``:kind`` suffix.

    Examples
    --------
    >>> gate_catalog("su4/su2-spin-half").param_count
    12
    >>> gate_catalog("su4/u3").param_count
    6
    """
    if ":" in space_id and kind is None:
        space_id, kind = space_id.split(":", 1)
    base = get_space(space_id).space_id
    kind = kind or _DEFAULT_KIND.get(base, "horizontal")
    if kind not in KINDS:
        raise UnknownSpace(f"unknown gate kind {kind!r}; choose from {', '.join(KINDS)}")
    space = homogeneous_space(base)
    if kind == "kak":
        return kak_gate_spec(base)
    if kind == "kak-circuit":
        if base != "su4/su2xsu2":
            raise UnknownSpace("the CNOT circuit form exists only for su4/su2xsu2")
        return GateSpec("kak-circuit", base, _scaled(space.m), kak_circuit_factors(), 9, (), 2)
    if kind == "stabilizer":
        if base not in ("su4/u3", "so4/so3"):
            raise UnknownSpace(f"no stabilizer gate for {base}")
        G = stabilizer_generators(4, real=(base == "so4/so3"))
        return exponential_gate("stabilizer", base, G, _pauli_labels(G), 2)
    if kind == "equivariant":
        sub = space.commutant
        if sub.dim == 0:
            raise UnknownSpace(f"{base} has no equivariant directions")
    elif kind == "full":
        sub = space.g.subspace()
    else:
        sub = space.m
    G = _scaled(sub)
    n_q = max(1, int(round(np.log2(space.g.ambient_dim))))
    return exponential_gate(kind, base, G, _pauli_labels(G), n_q)


def horizontal_residual(spec: GateSpec, theta, space_id: str | None = None) -> float:
    """Norm of the part of ``logm(U(theta))`` outside the space's ``m``."""
    space = homogeneous_space(space_id or spec.space_id)
    A = logm_unitary(gate_unitary(spec, theta))
    return float(space.m.residual(A))
