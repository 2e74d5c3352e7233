"""End-to-end acceptance checks, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import time

import numpy as np
import pytest
import scipy.linalg as sla

import fixtures as fx
from horizon import spaces
from horizon.algebra import subspace_distance, subspace_from_matrices
from horizon.gates import (
    gate_catalog,
    gate_unitary,
    kak_circuit_unitary,
    reparameterize_under_symmetry,
    vatan_block,
    vatan_coefficients,
)
from horizon.linalg import logm_unitary
from horizon.simulator import BrickCircuit, circuit_state, energy, energy_and_gradient, expectation, initial_state, total_spin_observable
from horizon.spaces import TABLE_SPACES, homogeneous_space, space_ids
from horizon.vqe import (
    ExperimentConfig,
    HamiltonianSpec,
    build_hamiltonian,
    compare_experiment,
    exact_ground_energy,
    run_experiment,
    sector_ground_energy,
)
from oracles import finite_diff, pauli, phase_distance

# Adam settings for the Heisenberg runs; chosen once from a sweep and shared by every part
HEISENBERG_OPT = {"learning_rate": 0.02, "beta2": 0.99, "max_iters": 500, "seed": 0}
RUN_BUDGET_S = 600


# ---------------------------------------------------------------- criterion 1

_table_time = {}


@pytest.fixture(scope="module")
def fresh_table():
    spaces._resolve.cache_clear()
    t0 = time.perf_counter()
    dims = {sid: homogeneous_space(sid).decomposition.dims for sid in TABLE_SPACES}
    _table_time["s"] = time.perf_counter() - t0
    return dims


@pytest.mark.criterion(1)
@pytest.mark.parametrize("sid", TABLE_SPACES)
def test_table_dimensions(fresh_table, sid):
    assert fresh_table[sid] == fx.TABLE_DIMS[sid]


@pytest.mark.criterion(1)
def test_table_runtime(fresh_table):
    assert _table_time["s"] < 30


# ---------------------------------------------------------------- criterion 2

def _published(space, exprs):
    return subspace_from_matrices(space.g, fx.elements(exprs))


FIXTURE_CASES = [
    ("su4/su2-spin-three-halves", "m", fx.SPIN_THREE_HALVES_M),
    ("su4/sp2", "k", fx.SP2_K),
    ("su4/sp2", "m", fx.SP2_M),
    ("so4/u2", "k", fx.SO4_U2_K),
    ("so4/u2", "m", fx.SO4_U2_M),
    ("so4/u2", "commutant", fx.SO4_U2_CENTER),
    ("so4/1xso2x1", "m", fx.CHARGE_M),
    ("so4/1xso2x1", "commutant", fx.CHARGE_H),
    ("su8/s-u2xu6", "k", fx.GRASSMANNIAN_K),
    ("su8/s-u2xu6", "m", fx.GRASSMANNIAN_M),
]


@pytest.mark.criterion(2)
@pytest.mark.parametrize("sid,part,exprs", FIXTURE_CASES, ids=[f"{c[0]}-{c[1]}" for c in FIXTURE_CASES])
def test_published_bases(sid, part, exprs):
    space = homogeneous_space(sid)
    mine = getattr(space, part)
    theirs = _published(space, exprs)
    assert mine.dim == theirs.dim
    assert subspace_distance(mine, theirs) < 1e-8


@pytest.mark.criterion(2)
def test_published_cartan_for_sp2():
    space = homogeneous_space("su4/sp2")
    h = space.cartan_subalgebra(seed=1j * pauli("IX"))
    assert subspace_distance(h, _published(space, fx.SP2_H)) < 1e-8


# ---------------------------------------------------------------- criterion 3

@pytest.mark.criterion(3)
@pytest.mark.parametrize("sid", space_ids())
def test_bracket_relations(sid):
    space = homogeneous_space(sid)
    rep = space.symmetric_report()
    assert rep.kk_residual < 1e-8
    assert rep.km_residual < 1e-8
    if space.spec.symmetric:
        assert rep.mm_residual < 1e-8


@pytest.mark.criterion(3)
def test_spin_half_split_leaks():
    assert homogeneous_space("su4/su2-spin-half").symmetric_report().mm_residual > 0.1


# ---------------------------------------------------------------- criterion 4

@pytest.mark.criterion(4)
@pytest.mark.parametrize("sid", ["su2/u1", "su4/su2-spin-half"])
def test_reparameterization(sid):
    gate = gate_catalog(sid)
    k_basis = homogeneous_space(sid).k.matrices()
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        theta = rng.normal(size=gate.param_count)
        k = sla.expm(np.tensordot(rng.normal(size=len(k_basis)), k_basis, axes=(0, 0)))
        theta2 = reparameterize_under_symmetry(gate, k, theta)
        worst = max(worst, np.abs(gate_unitary(gate, theta) @ k - k @ gate_unitary(gate, theta2)).max())
    assert worst < 1e-9


@pytest.mark.criterion(4)
def test_bloch_rotation_matrix():
    gate = gate_catalog("su2/u1")
    rng = np.random.default_rng(7)
    for _ in range(100):
        theta, phi = rng.normal(size=2), rng.uniform(-np.pi, np.pi)
        R = np.array([[np.cos(2 * phi), -np.sin(2 * phi)], [np.sin(2 * phi), np.cos(2 * phi)]])
        theta2 = reparameterize_under_symmetry(gate, sla.expm(1j * phi * pauli("Z")), theta)
        assert np.allclose(theta2, R @ theta, rtol=0, atol=1e-12)


# ---------------------------------------------------------------- criterion 5

def _k_projection(U):
    space = homogeneous_space("su4/su2xsu2")
    L = logm_unitary(U)
    c = space.g.coords(L)
    return float(np.linalg.norm(space.k.coords @ c))


@pytest.mark.criterion(5)
def test_three_cnot_block_is_horizontal():
    rng = np.random.default_rng(5)
    worst = max(_k_projection(vatan_block(*rng.uniform(-np.pi, np.pi, 3))) for _ in range(100))
    assert worst < 1e-8


@pytest.mark.criterion(5)
def test_full_circuit_is_horizontal():
    rng = np.random.default_rng(6)
    worst = max(
        _k_projection(kak_circuit_unitary(*(rng.uniform(-np.pi, np.pi, 3) for _ in range(3)))) for _ in range(100)
    )
    assert worst < 1e-8


@pytest.mark.criterion(5)
def test_frozen_block_map():
    rng = np.random.default_rng(8)
    P = [pauli(w) for w in ("XX", "YY", "ZZ")]
    worst = 0.0
    for _ in range(100):
        theta = rng.uniform(-np.pi, np.pi, 3)
        c = vatan_coefficients(theta)
        target = sla.expm(1j * sum(ci * Pi for ci, Pi in zip(c, P)))
        worst = max(worst, phase_distance(vatan_block(*theta), target))
    assert worst < 1e-9


# ---------------------------------------------------------------- criterion 6

GRADIENT_GATES = [
    "su4/u3:kak", "so4/so3:kak", "su4/su2-spin-half", "su4/su2-spin-half:equivariant", "su4/su2xsu2", "su4/su2xsu2:kak",
    "su4/su2xsu2:kak-circuit", "su4/u3", "su4/u3:horizontal", "so4/so3", "su4/su2-spin-three-halves",
    "su4/sp2", "su4/sp2:kak", "so4/su2", "so4/1xso2x1", "so4/1xso2x1:equivariant", "so4/u2", "so4/u2:kak",
    "su4", "so4",
]


@pytest.mark.criterion(6)
def test_gradients_match_finite_differences():
    t0 = time.perf_counter()
    rng = np.random.default_rng(66)
    worst = 0.0
    for i, gid in enumerate(GRADIENT_GATES):
        circuit = BrickCircuit(4, 2, gate_catalog(gid), "periodic" if i % 2 else "open")
        H = build_hamiltonian(HamiltonianSpec("heisenberg_random", 4, circuit.boundary, seed=i))
        psi = initial_state("haar_random", 4, seed=i)
        theta = rng.normal(size=circuit.param_count)
        _, g = energy_and_gradient(circuit, theta, psi, H)
        fd = finite_diff(lambda t: energy(circuit, t, psi, H), theta, h=1e-5)
        worst = max(worst, np.linalg.norm(g - fd) / np.linalg.norm(fd))
    assert worst < 1e-6
    assert time.perf_counter() - t0 < 60


# ---------------------------------------------------------------- criterion 7

def _heisenberg_run(gate, state, hamiltonian="heisenberg_uniform", seed=None):
    cfg = ExperimentConfig(hamiltonian=hamiltonian, n_qubits=8, depth=8, gate=gate, boundary="periodic",
                           initial_state=state, hamiltonian_seed=seed, track_spin=":equivariant" in gate,
                           optimizer=dict(HEISENBERG_OPT))
    rec = run_experiment(cfg)
    assert rec.wall_time < RUN_BUDGET_S
    return rec


@pytest.fixture(scope="module")
def runs():
    return {}


def _cached(runs, *key):
    if key not in runs:
        runs[key] = _heisenberg_run(*key)
    return runs[key]


@pytest.fixture(scope="module")
def random_chain_seed():
    # first seed whose ground state lies outside the S = 0 sector by a visible margin
    S2 = total_spin_observable(8)
    for seed in range(20):
        H = build_hamiltonian(HamiltonianSpec("heisenberg_random", 8, "periodic", seed))
        if sector_ground_energy(H, S2, 0.0) - exact_ground_energy(H)[0] > 1e-2:
            return seed
    pytest.fail("no suitable random chain in the first 20 seeds")


@pytest.mark.criterion(7)
@pytest.mark.parametrize("state", ["zeros", "singlet"])
def test_7a_horizontal_converges(runs, state):
    assert _cached(runs, "su4/su2-spin-half", state).final_delta_e < 1e-3


@pytest.mark.criterion(7)
def test_7b_equivariant_from_singlet_converges(runs):
    assert _cached(runs, "su4/su2-spin-half:equivariant", "singlet").final_delta_e < 1e-3


@pytest.mark.criterion(7)
def test_7c_equivariant_from_zeros_is_stuck(runs):
    H = build_hamiltonian(HamiltonianSpec("heisenberg_uniform", 8, "periodic"))
    n = 8
    psi = initial_state("zeros", n)
    s2 = expectation(psi, total_spin_observable(n))
    gap = sector_ground_energy(H, total_spin_observable(n), s2) - exact_ground_energy(H)[0]
    rec = _cached(runs, "su4/su2-spin-half:equivariant", "zeros")
    assert gap > 1.0
    # the sector is degenerate, so the floor is reached exactly; allow rounding only
    assert min(rec.delta_e) >= gap - 1e-9


@pytest.mark.criterion(7)
def test_7d_equivariant_conserves_spin(runs, random_chain_seed):
    trajectories = [
        _cached(runs, "su4/su2-spin-half:equivariant", "singlet"),
        _cached(runs, "su4/su2-spin-half:equivariant", "zeros"),
        _cached(runs, "su4/su2-spin-half:equivariant", "singlet", "heisenberg_random", random_chain_seed),
    ]
    for rec in trajectories:
        assert np.ptp(rec.s2) < 1e-8


@pytest.mark.criterion(7)
def test_7e_random_chain_separates_gates(runs, random_chain_seed):
    hor = _cached(runs, "su4/su2-spin-half", "singlet", "heisenberg_random", random_chain_seed)
    equ = _cached(runs, "su4/su2-spin-half:equivariant", "singlet", "heisenberg_random", random_chain_seed)
    assert hor.final_delta_e < 1e-2
    assert equ.final_delta_e >= 1e-2


# ---------------------------------------------------------------- criterion 8

@pytest.mark.criterion(8)
def test_parameter_ratio():
    assert gate_catalog("su4/u3").param_count == 6
    assert gate_catalog("su4").param_count == 15
    assert gate_catalog("so4/so3").param_count * 2 == gate_catalog("so4").param_count


@pytest.mark.criterion(8)
@pytest.mark.parametrize("ensemble,horizontal,full", [("gue", "su4/u3", "su4"), ("goe", "so4/so3", "so4")])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_random_target_comparison(ensemble, horizontal, full, seed):
    cfg = ExperimentConfig(hamiltonian=ensemble, n_qubits=8, depth=8, boundary="periodic", initial_state="zeros",
                           hamiltonian_seed=seed, optimizer={"seed": seed})
    comp = compare_experiment(cfg, horizontal, full)
    assert comp.run_a.wall_time < RUN_BUDGET_S and comp.run_b.wall_time < RUN_BUDGET_S
    assert abs(comp.delta_ebar_final) <= 0.05


# ---------------------------------------------------------------- criterion 9

@pytest.mark.criterion(9)
def test_horizontal_circuit_moves_total_spin():
    n = 4
    circuit = BrickCircuit(n, 2, gate_catalog("su4/su2-spin-half"), "periodic")
    psi = initial_state("zeros", n)
    S2 = total_spin_observable(n)
    base = expectation(psi, S2)
    rng = np.random.default_rng(9)
    best = 0.0
    for _ in range(50):
        theta = rng.uniform(-np.pi, np.pi, circuit.param_count)
        best = max(best, abs(expectation(circuit_state(circuit, theta, psi), S2) - base))
        if best > 0.1:
            break
    assert best > 0.1
