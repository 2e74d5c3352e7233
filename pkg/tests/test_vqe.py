import csv
import io
import json

import numpy as np
import pytest
import scipy.linalg as sla

from horizon.errors import DegenerateSpectrum, TooFewQubits
from horizon.gates import gate_catalog
from horizon.simulator import BrickCircuit, energy, initial_state, total_spin_observable
from horizon.vqe import (
    Comparison,
    ExperimentConfig,
    HamiltonianSpec,
    OptimizerConfig,
    RunRecord,
    build_hamiltonian,
    chain_bonds,
    compare_experiment,
    dense,
    exact_ground_energy,
    relative_error,
    run_experiment,
    run_many,
    run_vqe,
    sector_ground_energy,
)
from oracles import pauli


def _dense_heisenberg(n, bonds, h):
    def op(word_at):
        M = np.ones((1, 1))
        for q in range(n):
            M = np.kron(M, pauli(word_at.get(q, "I")))
        return M

    return sum(0.25 * hb * op({i: a, j: a}) for (i, j), hb in zip(bonds, h) for a in "XYZ")


@pytest.mark.parametrize("n,boundary", [(2, "open"), (2, "periodic"), (3, "periodic"), (4, "open"), (5, "periodic")])
def test_heisenberg_matches_dense(n, boundary):
    bonds = chain_bonds(n, boundary)
    assert len(bonds) == (n if boundary == "periodic" and n > 2 else n - 1)
    H = build_hamiltonian(HamiltonianSpec("heisenberg_uniform", n, boundary))
    assert np.allclose(dense(H), _dense_heisenberg(n, bonds, np.ones(len(bonds))))
    spec = HamiltonianSpec("heisenberg_random", n, boundary, seed=9)
    h = np.random.default_rng(9).normal(size=len(bonds))
    assert np.allclose(dense(build_hamiltonian(spec)), _dense_heisenberg(n, bonds, h))


def test_uniform_chain_ground_state_is_singlet():
    H = build_hamiltonian(HamiltonianSpec("heisenberg_uniform", 8, "periodic"))
    e0, emax, vec = exact_ground_energy(H)
    assert e0 == pytest.approx(sla.eigh(dense(H), eigvals_only=True)[0], abs=1e-10)
    S2 = dense(total_spin_observable(8))
    assert np.vdot(vec, S2 @ vec).real == pytest.approx(0, abs=1e-8)
    assert sector_ground_energy(H, total_spin_observable(8), 0.0) == pytest.approx(e0, abs=1e-10)
    assert sector_ground_energy(H, total_spin_observable(8), 80.0) == pytest.approx(2.0)


def test_random_matrix_ensembles():
    for kind in ("gue", "goe"):
        a = build_hamiltonian(HamiltonianSpec(kind, 3, seed=4))
        b = build_hamiltonian(HamiltonianSpec(kind, 3, seed=4))
        assert np.array_equal(a, b)
        assert np.abs(a - a.conj().T).max() < 1e-12
    assert np.isrealobj(build_hamiltonian(HamiltonianSpec("goe", 3, seed=1)))
    assert not np.isrealobj(build_hamiltonian(HamiltonianSpec("gue", 3, seed=1)))
    assert not np.array_equal(build_hamiltonian(HamiltonianSpec("gue", 3, seed=1)),
                              build_hamiltonian(HamiltonianSpec("gue", 3, seed=2)))


def test_hamiltonian_errors():
    with pytest.raises(TooFewQubits):
        build_hamiltonian(HamiltonianSpec("heisenberg_uniform", 1))
    with pytest.raises(ValueError):
        HamiltonianSpec("ising", 4)
    with pytest.raises(ValueError):
        sector_ground_energy(build_hamiltonian(HamiltonianSpec("heisenberg_uniform", 2)), total_spin_observable(2), 3.0)


def test_relative_error():
    assert relative_error(0.5, 0.0, 2.0) == 0.25
    assert relative_error(-1e-14, 0.0, 2.0) == 0.0
    with pytest.raises(DegenerateSpectrum):
        relative_error(1.0, 1.0, 1.0)


def test_optimizer_config():
    with pytest.raises(ValueError):
        OptimizerConfig(learning_rate=0)
    with pytest.raises(ValueError):
        OptimizerConfig(max_iters=0)
    with pytest.raises(ValueError):
        OptimizerConfig(algorithm="lbfgs")
    cos = OptimizerConfig(schedule="cosine", learning_rate=0.1, final_lr=0.01, max_iters=11)
    assert cos.lr_at(0) == pytest.approx(0.1)
    assert cos.lr_at(10) == pytest.approx(0.01)
    assert OptimizerConfig().lr_at(7) == 0.05


def _small_problem(gid="su4/su2-spin-half"):
    H = build_hamiltonian(HamiltonianSpec("heisenberg_uniform", 4, "periodic"))
    return H, BrickCircuit(4, 2, gate_catalog(gid), "periodic")


@pytest.mark.parametrize("algorithm", ["adam", "gradient_descent"])
def test_run_vqe_decreases_energy(algorithm):
    H, c = _small_problem()
    rec = run_vqe(H, c, "haar_random", OptimizerConfig(algorithm=algorithm, max_iters=40, learning_rate=0.05),
                  state_seed=1)
    assert len(rec.energy) == 40
    assert rec.energy[-1] < rec.energy[0]
    assert rec.delta_e[-1] == pytest.approx(rec.energy[-1] - rec.e0)
    assert min(rec.delta_e) > -1e-10
    assert len(rec.final_theta) == c.param_count


def test_identity_start_and_grad_tol_stop():
    H, c = _small_problem()
    rec = run_vqe(H, c, "zeros", OptimizerConfig(init_scale=0, max_iters=5))
    assert rec.energy[0] == pytest.approx(1.0)
    # |0...0> only picks up a phase from every equivariant block, so the gradient vanishes
    H2, c2 = _small_problem("su4/su2-spin-half:equivariant")
    rec2 = run_vqe(H2, c2, "zeros", OptimizerConfig(init_scale=0, max_iters=50))
    assert rec2.stop_reason == "grad_tol" and len(rec2.energy) == 1


def test_equivariant_run_preserves_spin():
    H, c = _small_problem("su4/su2-spin-half:equivariant")
    rec = run_vqe(H, c, "haar_random", OptimizerConfig(max_iters=30), track_spin=True, state_seed=2)
    assert np.ptp(rec.s2) < 1e-8


def test_record_serialization():
    H, c = _small_problem()
    rec = run_vqe(H, c, "zeros", OptimizerConfig(max_iters=6), track_spin=True, config={"tag": "x"})
    doc = json.loads(json.dumps(rec.to_json()))
    assert doc["schema_version"] == 1 and doc["config"]["tag"] == "x"
    assert doc["config"]["optimizer"]["max_iters"] == 6
    assert doc["final_delta_e"] == rec.delta_e[-1]
    back = RunRecord(**{k: doc[k] for k in RunRecord.__dataclass_fields__})
    assert back.energy == rec.energy
    rows = list(csv.DictReader(io.StringIO(rec.to_csv())))
    assert list(rows[0]) == ["iter", "energy", "delta_e", "s2", "grad_norm"]
    assert len(rows) == 6 and float(rows[-1]["energy"]) == rec.energy[-1]


def test_experiment_config_round_trip():
    cfg = ExperimentConfig(n_qubits=4, depth=2, optimizer={"max_iters": 3})
    assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict({"n_qubits": 4, "colour": "red"})
    with pytest.raises(TypeError):
        ExperimentConfig.from_dict({"optimizer": {"momentum": 0.9}})
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict({"hamiltonian": "ising"})


def test_experiment_and_comparison():
    cfg = ExperimentConfig(hamiltonian="gue", n_qubits=3, depth=2, hamiltonian_seed=0, boundary="open",
                           initial_state="zeros", optimizer={"max_iters": 10})
    rec = run_experiment(cfg)
    assert rec.config["gate"] == cfg.gate and len(rec.energy) == 10
    comp = compare_experiment(cfg, "su4/u3", "su4")
    assert isinstance(comp, Comparison)
    assert comp.delta_ebar_final == pytest.approx(comp.ebar_a - comp.ebar_b)
    assert 0 <= comp.ebar_a <= 1 and comp.run_a.e0 == comp.run_b.e0
    doc = comp.to_json()
    assert doc["gate_a"] == "su4/u3" and doc["gate_b"] == "su4"


def test_run_many_is_deterministic():
    cfgs = [ExperimentConfig(n_qubits=4, depth=2, optimizer={"max_iters": 4, "seed": s}) for s in (0, 1)]
    serial = run_many(cfgs, workers=1)
    pooled = run_many(cfgs, workers=2)
    assert [d["energy"] for d in serial] == [d["energy"] for d in pooled]
    assert serial[0]["energy"] != serial[1]["energy"]
