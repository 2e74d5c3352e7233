"""Horizontal and equivariant quantum gates from Lie algebra decompositions."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraBasis,
    Decomposition,
    Subspace,
    cartan_subalgebra,
    commutant,
    dla_dimension,
    full_decomposition,
    generate_dla,
    pauli_basis,
    so_basis,
    spans_equal,
    su_basis,
    u_basis,
)
from .errors import HorizonError
from .gates import (
    GateSpec,
    gate_catalog,
    gate_unitary,
    kak_circuit_unitary,
    kak_factor_su4,
    reparameterize_under_symmetry,
    vatan_block,
)
from .pauli import PauliSum, parse_pauli_sum, pauli_matrix
from .simulator import BrickCircuit, circuit_state, energy, energy_and_gradient, initial_state
from .spaces import custom_space, homogeneous_space, space_ids
from .symmetric import Involution, parse_involution_id, split_by_involution, verify_symmetric
from .vqe import ExperimentConfig, OptimizerConfig, build_hamiltonian, compare_experiment, run_experiment, run_vqe
