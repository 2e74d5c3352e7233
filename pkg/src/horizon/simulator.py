"""
Dense statevector simulation of bricklayer circuits.

States are flat complex arrays of length ``2**n`` with qubit 0 as the most
significant bit (leftmost Kronecker factor). Gates are applied by reshaping
the state into one axis per qubit and contracting over the targeted axes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .errors import NonUnitary, OddQubits, ParamLengthMismatch, QubitRange, ShapeMismatch
from .errors import NotHermitian as NonHermitian
from .gates import GateSpec
from .linalg import is_unitary
from .pauli import PauliSum, pauli_sparse

# -------------------------------------------------------------------- states


def _n_qubits(state) -> int:
    n = int(np.log2(state.size))
    if 2**n != state.size:
        raise ShapeMismatch(f"state of length {state.size} is not a qubit register")
    return n


def _front(state, qubits, n):
    # bring target axes to the front and flatten the rest
    t = np.moveaxis(state.reshape((2,) * n), qubits, range(len(qubits)))
    return t.reshape(2 ** len(qubits), -1)


def _back(block, qubits, n):
    k = len(qubits)
    t = block.reshape((2,) * n)
    return np.moveaxis(t, range(k), qubits).reshape(-1)


def apply_gate(state, U, qubits, check: bool = True) -> np.ndarray:
    """Apply a ``2^k x 2^k`` unitary to the listed qubits; returns a new state.

    Raises
    ------
    QubitRange
        Repeated or out-of-range qubits, or a size mismatch with ``U``.
    NonUnitary
        ``U`` is not unitary within ``eq_tol`` (skipped when ``check`` is false).
    """
    state = np.asarray(state, dtype=complex)
    n = _n_qubits(state)
    qubits = [int(q) for q in np.atleast_1d(qubits)]
    if len(set(qubits)) != len(qubits) or any(q < 0 or q >= n for q in qubits):
        raise QubitRange(f"qubits {qubits} invalid for a {n}-qubit state")
    U = np.asarray(U, dtype=complex)
    if U.shape != (2 ** len(qubits),) * 2:
        raise QubitRange(f"a {U.shape[0]}x{U.shape[0]} matrix cannot act on qubits {qubits}")
    if check and not is_unitary(U):
        raise NonUnitary("gate matrix is not unitary")
    return _back(U @ _front(state, qubits, n), qubits, n)


def initial_state(kind: str, n_qubits: int, seed: int | None = None) -> np.ndarray:
    """Standard input states.

    ``kind`` is ``"zeros"``, ``"singlet"`` or ``"triplet"`` (Bell pairs on
    qubits (0,1), (2,3), ...; ``"bell_product"`` means singlet), or
    ``"haar_random"`` (normalized complex Gaussian vector from ``seed``).
    """
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    dim = 2**n_qubits
    if kind == "zeros":
        psi = np.zeros(dim, complex)
        psi[0] = 1
        return psi
    if kind in ("bell_product", "singlet", "triplet", "bell_product:singlet", "bell_product:triplet"):
        if n_qubits % 2:
            raise OddQubits(f"Bell products need an even number of qubits, got {n_qubits}")
        sign = 1 if kind.endswith("triplet") else -1
        pair = np.array([0, 1, sign, 0], complex) / np.sqrt(2)
        psi = np.ones(1, complex)
        for _ in range(n_qubits // 2):
            psi = np.kron(psi, pair)
        return psi
    if kind in ("haar_random", "haar"):
        rng = np.random.default_rng(seed)
        psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        return psi / np.linalg.norm(psi)
    raise ValueError(f"unknown initial state {kind!r}")


# --------------------------------------------------------------- observables


def as_operator(H):
    """Sparse or dense matrix for a :class:`PauliSum` or an array."""
    if isinstance(H, PauliSum):
        return H.sparse()
    return H if sp.issparse(H) else np.asarray(H)


def check_hermitian(H, tol: float = 1e-9):
    if isinstance(H, PauliSum):
        if not H.is_hermitian(tol):
            raise NonHermitian("Pauli sum has complex coefficients")
        return
    M = as_operator(H)
    diff = M - M.conj().T
    err = abs(diff).max() if sp.issparse(diff) else np.abs(diff).max()
    if err > tol:
        raise NonHermitian(f"observable is not Hermitian (error {err:.3e})")


def expectation(state, H) -> float:
    """``<psi|H|psi>`` for a Hermitian observable."""
    check_hermitian(H)
    M = as_operator(H)
    state = np.asarray(state)
    if M.shape[1] != state.size:
        raise ShapeMismatch(f"observable of size {M.shape[1]} vs state of length {state.size}")
    val = np.vdot(state, M @ state)
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise NonHermitian(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def total_spin_observable(n_qubits: int) -> PauliSum:
    """``S^2 = sum_a (sum_i sigma_i^a)^2 = 3n I + 2 sum_{i<j} (XX + YY + ZZ)_{ij}``."""
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    terms = [(3.0 * n_qubits, "I" * n_qubits)]
    for i in range(n_qubits):
        for j in range(i + 1, n_qubits):
            for a in "XYZ":
                w = ["I"] * n_qubits
                w[i] = w[j] = a
                terms.append((2.0, "".join(w)))
    return PauliSum(terms, n_qubits)


def bloch_vectors(state) -> np.ndarray:
    """Single-qubit Bloch vectors ``(<X>, <Y>, <Z>)``, one row per qubit."""
    state = np.asarray(state, dtype=complex)
    n = _n_qubits(state)
    out = np.zeros((n, 3))
    for q in range(n):
        v = _front(state, [q], n)
        rho = v @ v.conj().T
        out[q] = [2 * rho[0, 1].real, 2 * rho[1, 0].imag, (rho[0, 0] - rho[1, 1]).real]
    return out


# ------------------------------------------------------------------ circuits


@dataclass(frozen=True, eq=False)
class BrickCircuit:
    """Alternating layers of two-qubit blocks.

    Layer ``l`` starts at qubit ``l % 2``. With periodic boundaries the odd
    layers also get the block ``(n-1, 0)`` (for ``n > 2`` even). Parameters
    are ordered layer by layer, block by block from the left, then by the
    gate's own local index.
    """

    n_qubits: int
    depth: int
    gate: GateSpec
    boundary: str = "open"

    def __post_init__(self):
        if self.boundary not in ("open", "periodic"):
            raise ValueError("boundary must be 'open' or 'periodic'")
        if self.gate.n_qubits not in (1, 2):
            raise ValueError("brick circuits take one- or two-qubit gates")
        if self.n_qubits < self.gate.n_qubits:
            raise QubitRange("not enough qubits for the gate")

    @cached_property
    def layers(self) -> list[list[tuple]]:
        n = self.n_qubits
        out = []
        for l in range(self.depth):
            if self.gate.n_qubits == 1:
                out.append([(q,) for q in range(n)])
                continue
            off = l % 2
            blocks = [(q, q + 1) for q in range(off, n - 1, 2)]
            if self.boundary == "periodic" and off == 1 and n > 2 and n % 2 == 0:
                blocks.append((n - 1, 0))
            out.append(blocks)
        return out

    @cached_property
    def blocks(self) -> list[tuple]:
        return [b for layer in self.layers for b in layer]

    @property
    def param_count(self) -> int:
        return len(self.blocks) * self.gate.param_count

    def split(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float).ravel()
        if theta.size != self.param_count:
            raise ParamLengthMismatch(f"circuit takes {self.param_count} parameters, got {theta.size}")
        return theta.reshape(len(self.blocks), self.gate.param_count)

    def layout(self) -> list[tuple]:
        """``(layer, block, local index)`` for every flat parameter position."""
        out = []
        for l, layer in enumerate(self.layers):
            for b in range(len(layer)):
                out.extend((l, b, j) for j in range(self.gate.param_count))
        return out


def circuit_state(circuit: BrickCircuit, theta, psi0) -> np.ndarray:
    """Final state after all layers, first layer first."""
    params = circuit.split(theta)
    psi = np.asarray(psi0, dtype=complex)
    for qubits, th in zip(circuit.blocks, params):
        psi = apply_gate(psi, circuit.gate.unitary(th), qubits, check=False)
    return psi


def energy(circuit: BrickCircuit, theta, psi0, H) -> float:
    return expectation(circuit_state(circuit, theta, psi0), H)


def energy_and_gradient(circuit: BrickCircuit, theta, psi0, H):
    """Energy and its exact gradient by one forward and one adjoint sweep.

    For block ``b`` with derivative stack ``dU_j``, the gradient entry is
    ``2 Re <lambda_b| dU_j |psi_b>`` where ``psi_b`` is the state entering
    the block and ``lambda_b`` is ``H psi_final`` pulled back through every
    later block.
    """
    check_hermitian(H)
    params = circuit.split(theta)
    n = circuit.n_qubits
    M = as_operator(H)
    states = [np.asarray(psi0, dtype=complex)]
    cache = []
    for qubits, th in zip(circuit.blocks, params):
        U, dU = circuit.gate.unitary_and_derivatives(th)
        cache.append((U, dU))
        states.append(apply_gate(states[-1], U, qubits, check=False))
    psi = states[-1]
    lam = M @ psi
    E = float(np.vdot(psi, lam).real)
    grad = np.zeros_like(params)
    for b in range(len(circuit.blocks) - 1, -1, -1):
        qubits = list(circuit.blocks[b])
        U, dU = cache[b]
        R = _front(lam, qubits, n).conj() @ _front(states[b], qubits, n).T
        grad[b] = 2 * np.einsum("pab,ab->p", dU, R).real
        lam = _back(U.conj().T @ _front(lam, qubits, n), qubits, n)
    return E, grad.ravel()


def gradient(circuit: BrickCircuit, theta, psi0, H) -> np.ndarray:
    return energy_and_gradient(circuit, theta, psi0, H)[1]
