"""
Hamiltonians, exact diagonalization, and the variational optimization loop.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DegenerateSpectrum, TooFewQubits
from .gates import gate_catalog
from .linalg import DEFAULT_TOL, herm_eig
from .pauli import PauliSum
from .simulator import (
    BrickCircuit,
    as_operator,
    energy_and_gradient,
    expectation,
    circuit_state,
    initial_state,
    total_spin_observable,
)

SCHEMA_VERSION = 1
HAMILTONIAN_KINDS = ("heisenberg_uniform", "heisenberg_random", "gue", "goe")


@dataclass(frozen=True)
class HamiltonianSpec:
    kind: str
    n_qubits: int
    boundary: str = "periodic"
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in HAMILTONIAN_KINDS:
            raise ValueError(f"unknown Hamiltonian kind {self.kind!r}")
        if self.boundary not in ("open", "periodic"):
            raise ValueError("boundary must be 'open' or 'periodic'")


def chain_bonds(n_qubits: int, boundary: str) -> list[tuple[int, int]]:
    bonds = [(i, i + 1) for i in range(n_qubits - 1)]
    # two sites already share their only bond
    if boundary == "periodic" and n_qubits > 2:
        bonds.append((n_qubits - 1, 0))
    return bonds


def build_hamiltonian(spec: HamiltonianSpec):
    """Pauli sum for the Heisenberg kinds, dense matrix for GUE/GOE.

    Examples
    --------
    >>> H = build_hamiltonian(HamiltonianSpec("heisenberg_uniform", 2, "open"))
    >>> np.round(np.linalg.eigvalsh(H.dense()), 6)
    array([-0.75,  0.25,  0.25,  0.25])
    """
    n = spec.n_qubits
    if n < 2:
        raise TooFewQubits(f"need at least two qubits, got {n}")
    if spec.kind.startswith("heisenberg"):
        bonds = chain_bonds(n, spec.boundary)
        if spec.kind == "heisenberg_random":
            h = np.random.default_rng(spec.seed).normal(size=len(bonds))
        else:
            h = np.ones(len(bonds))
        terms = []
        for (i, j), hij in zip(bonds, h):
            for a in "XYZ":
                w = ["I"] * n
                w[i] = w[j] = a
                terms.append((0.25 * float(hij), "".join(w)))
        return PauliSum(terms, n)
    rng = np.random.default_rng(spec.seed)
    dim = 2**n
    if spec.kind == "gue":
        A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        return (A + A.conj().T) / 2
    A = rng.normal(size=(dim, dim))
    return (A + A.T) / 2


def dense(H) -> np.ndarray:
    M = as_operator(H)
    return M.toarray() if hasattr(M, "toarray") else np.asarray(M)


def exact_ground_energy(H):
    """``(E_min, E_max, ground vector)`` by full diagonalization."""
    w, V = herm_eig(dense(H))
    return float(w[0]), float(w[-1]), V[:, 0]


def sector_ground_energy(H, charge, value: float, tol: float = 1e-6) -> float:
    """Lowest eigenvalue of ``H`` inside the eigenspace of ``charge`` with eigenvalue ``value``.

    ``H`` must commute with ``charge``; used to bound what a symmetry
    preserving circuit can reach from a state of definite charge.
    """
    q, Q = herm_eig(dense(charge))
    sel = Q[:, np.abs(q - value) < tol]
    if sel.shape[1] == 0:
        raise ValueError(f"no eigenvalue {value} in the charge spectrum")
    Hs = sel.conj().T @ dense(H) @ sel
    return float(np.linalg.eigvalsh(0.5 * (Hs + Hs.conj().T))[0])


def relative_error(E, E_min, E_max) -> float:
    """``(E - E_min) / (E_max - E_min)``, clipped to [0, 1] against rounding."""
    span = E_max - E_min
    if span < DEFAULT_TOL.eq_tol:
        raise DegenerateSpectrum("E_max and E_min coincide")
    return float(np.clip((E - E_min) / span, 0.0, 1.0))


@dataclass(frozen=True)
class OptimizerConfig:
    algorithm: str = "adam"
    learning_rate: float = 0.05
    max_iters: int = 500
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    init_scale: float = 1e-3
    seed: int = 0
    grad_tol: float = 1e-8
    schedule: str = "constant"
    final_lr: float = 1e-3

    def __post_init__(self):
        if self.algorithm not in ("adam", "gradient_descent"):
            raise ValueError(f"unknown optimizer {self.algorithm!r}")
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be positive")
        if self.schedule not in ("constant", "cosine"):
            raise ValueError(f"unknown schedule {self.schedule!r}")

    def lr_at(self, it: int) -> float:
        """Step size at iteration ``it``; ``cosine`` anneals to ``final_lr`` at the last step."""
        if self.schedule == "constant" or self.max_iters < 2:
            return self.learning_rate
        frac = it / (self.max_iters - 1)
        return self.final_lr + 0.5 * (self.learning_rate - self.final_lr) * (1 + np.cos(np.pi * frac))


@dataclass
class RunRecord:
    """Per-iteration trajectory plus the configuration that produced it."""

    config: dict
    energy: list = field(default_factory=list)
    delta_e: list = field(default_factory=list)
    s2: list | None = None
    grad_norm: list = field(default_factory=list)
    final_theta: list = field(default_factory=list)
    e0: float = 0.0
    e_max: float = 0.0
    wall_time: float = 0.0
    stop_reason: str = ""

    @property
    def final_energy(self) -> float:
        return self.energy[-1]

    @property
    def final_delta_e(self) -> float:
        return self.delta_e[-1]

    def final_relative_error(self) -> float:
        return relative_error(self.final_energy, self.e0, self.e_max)

    def to_json(self) -> dict:
        doc = {"schema_version": SCHEMA_VERSION, **asdict(self)}
        doc["final_energy"] = self.final_energy
        doc["final_delta_e"] = self.final_delta_e
        return doc

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["iter", "energy", "delta_e", "s2", "grad_norm"])
        for i, (e, d, g) in enumerate(zip(self.energy, self.delta_e, self.grad_norm)):
            s = "" if self.s2 is None else repr(self.s2[i])
            w.writerow([i, repr(e), repr(d), s, repr(g)])
        return buf.getvalue()


def _start_state(psi0, n_qubits, seed):
    if isinstance(psi0, str):
        return initial_state(psi0, n_qubits, seed=seed)
    return np.asarray(psi0, dtype=complex)


def run_vqe(H, circuit: BrickCircuit, psi0="zeros", opt: OptimizerConfig | None = None,
            track_spin: bool = False, config: dict | None = None, state_seed: int | None = None,
            spectrum=None) -> RunRecord:
    """Minimize ``<psi0|U(theta)^dagger H U(theta)|psi0>`` over the circuit parameters.

    Parameters
    ----------
    psi0 : str or ndarray
        Initial-state kind (see :func:`initial_state`) or an explicit state.
    track_spin : bool
        Record ``<S^2>`` at every iteration.
    spectrum : tuple, optional
        Precomputed ``(E_min, E_max)``; otherwise obtained by diagonalization.
    """
    opt = opt or OptimizerConfig()
    t0 = time.perf_counter()
    psi = _start_state(psi0, circuit.n_qubits, state_seed)
    e0, e_max = spectrum if spectrum is not None else exact_ground_energy(H)[:2]
    S2 = total_spin_observable(circuit.n_qubits) if track_spin else None
    rng = np.random.default_rng(opt.seed)
    theta = opt.init_scale * rng.normal(size=circuit.param_count) if opt.init_scale > 0 else np.zeros(circuit.param_count)
    m = np.zeros_like(theta)
    v = np.zeros_like(theta)
    cfg = dict(config or {})
    cfg.setdefault("optimizer", asdict(opt))
    rec = RunRecord(config=cfg, s2=[] if track_spin else None, e0=float(e0), e_max=float(e_max))
    rec.stop_reason = "max_iters"
    for it in range(opt.max_iters):
        E, g = energy_and_gradient(circuit, theta, psi, H)
        gnorm = float(np.linalg.norm(g))
        rec.energy.append(E)
        rec.delta_e.append(E - e0)
        rec.grad_norm.append(gnorm)
        if track_spin:
            rec.s2.append(expectation(circuit_state(circuit, theta, psi), S2))
        if gnorm < opt.grad_tol:
            rec.stop_reason = "grad_tol"
            break
        if it == opt.max_iters - 1:
            break
        lr = opt.lr_at(it)
        if opt.algorithm == "adam":
            m = opt.beta1 * m + (1 - opt.beta1) * g
            v = opt.beta2 * v + (1 - opt.beta2) * g * g
            mhat = m / (1 - opt.beta1 ** (it + 1))
            vhat = v / (1 - opt.beta2 ** (it + 1))
            theta = theta - lr * mhat / (np.sqrt(vhat) + opt.epsilon)
        else:
            theta = theta - lr * g
    rec.final_theta = theta.tolist()
    rec.wall_time = time.perf_counter() - t0
    return rec


# ---------------------------------------------------------------- experiments

@dataclass
class ExperimentConfig:
    """Everything needed to reproduce one run; serializable to and from JSON."""

    hamiltonian: str = "heisenberg_uniform"
    n_qubits: int = 8
    depth: int = 8
    gate: str = "su4/su2-spin-half"
    boundary: str = "periodic"
    initial_state: str = "zeros"
    hamiltonian_seed: int | None = None
    state_seed: int | None = None
    track_spin: bool = False
    optimizer: dict = field(default_factory=dict)
    compare_gate: str | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**d)
        OptimizerConfig(**cfg.optimizer)
        HamiltonianSpec(cfg.hamiltonian, cfg.n_qubits, cfg.boundary, cfg.hamiltonian_seed)
        return cfg

    def to_dict(self) -> dict:
        return asdict(self)

    def hamiltonian_spec(self) -> HamiltonianSpec:
        return HamiltonianSpec(self.hamiltonian, self.n_qubits, self.boundary, self.hamiltonian_seed)


def run_experiment(cfg: ExperimentConfig, gate: str | None = None, H=None, spectrum=None) -> RunRecord:
    H = build_hamiltonian(cfg.hamiltonian_spec()) if H is None else H
    circuit = BrickCircuit(cfg.n_qubits, cfg.depth, gate_catalog(gate or cfg.gate), cfg.boundary)
    doc = cfg.to_dict()
    doc["gate"] = gate or cfg.gate
    return run_vqe(H, circuit, cfg.initial_state, OptimizerConfig(**cfg.optimizer), cfg.track_spin,
                   config=doc, state_seed=cfg.state_seed, spectrum=spectrum)


@dataclass
class Comparison:
    run_a: RunRecord
    run_b: RunRecord
    ebar_a: float
    ebar_b: float

    @property
    def delta_ebar_final(self) -> float:
        return self.ebar_a - self.ebar_b

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "gate_a": self.run_a.config.get("gate"),
            "gate_b": self.run_b.config.get("gate"),
            "ebar_a": self.ebar_a,
            "ebar_b": self.ebar_b,
            "delta_ebar_final": self.delta_ebar_final,
            "run_a": self.run_a.to_json(),
            "run_b": self.run_b.to_json(),
        }


def compare_experiment(cfg: ExperimentConfig, gate_a: str, gate_b: str) -> Comparison:
    """Run two gate families on the same Hamiltonian, layout and seeds; ``delta = Ebar_a - Ebar_b``."""
    H = build_hamiltonian(cfg.hamiltonian_spec())
    e_min, e_max, _ = exact_ground_energy(H)
    ra = run_experiment(cfg, gate_a, H, (e_min, e_max))
    rb = ra if gate_b == gate_a else run_experiment(cfg, gate_b, H, (e_min, e_max))
    return Comparison(ra, rb, ra.final_relative_error(), rb.final_relative_error())


def _run_dict(d):
    return run_experiment(ExperimentConfig.from_dict(d)).to_json()


def run_many(configs: list[ExperimentConfig], workers: int | None = None) -> list[dict]:
    """Independent runs in a process pool; results come back in input order."""
    payload = [c.to_dict() for c in configs]
    if workers == 1 or len(payload) <= 1:
        return [_run_dict(d) for d in payload]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_run_dict, payload))


def dump_json(obj, path):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, default=float)
