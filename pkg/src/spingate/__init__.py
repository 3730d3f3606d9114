"""Unitary dynamics of a two-quantum-dot spin inverter.

Two electrons on two tunnel-coupled dots realize a NOT gate driven purely
by Hamiltonian evolution: a local field on one dot rotates the spin
configuration, and the gate "fires" at the first maximum of the target
spin.  The package builds the two-site Hubbard Hamiltonian, evolves states
spectrally, locates switching times and optimal fields, and converts the
dimensionless results to laboratory units.
"""

from .analytic import (
    HeisenbergAsymptotics,
    SpinOscillation,
    exchange_splitting,
    free_oscillation,
    free_probabilities,
    free_spin,
    heisenberg_limits,
    reduce_singlet_block,
    zero_field_ground_energy,
    zero_field_ground_state,
)
from .evolution import (
    SpectralState,
    SpinObservables,
    energy_expectation,
    evolve,
    evolve_rk4,
    evolve_series,
    prepare_state,
    probabilities,
    project,
    spin_projections,
)
from .model import (
    BASIS,
    SZ_A,
    SZ_B,
    DegenerateGroundStateError,
    EigenSystem,
    JacobiError,
    ModelParams,
    build_hamiltonian,
    diagonalize,
    ground_state,
    jacobi_eigh,
)
from .switching import (
    HBAR_MEV_S,
    MU_B_MEV_PER_T,
    BracketError,
    HorizonExceededError,
    NoDynamicsError,
    PhysicalUnits,
    SwitchingReport,
    error_probability,
    field_in_tesla,
    find_switching_time,
    optimize_field,
    sweep_field,
    time_in_seconds,
    to_physical,
)

__version__ = "0.1.0"

__all__ = [
    "BASIS",
    "BracketError",
    "DegenerateGroundStateError",
    "EigenSystem",
    "HBAR_MEV_S",
    "HeisenbergAsymptotics",
    "HorizonExceededError",
    "JacobiError",
    "MU_B_MEV_PER_T",
    "ModelParams",
    "NoDynamicsError",
    "PhysicalUnits",
    "SpectralState",
    "SpinObservables",
    "SpinOscillation",
    "SwitchingReport",
    "SZ_A",
    "SZ_B",
    "build_hamiltonian",
    "diagonalize",
    "energy_expectation",
    "error_probability",
    "evolve",
    "evolve_rk4",
    "evolve_series",
    "exchange_splitting",
    "field_in_tesla",
    "find_switching_time",
    "free_oscillation",
    "free_probabilities",
    "free_spin",
    "ground_state",
    "heisenberg_limits",
    "jacobi_eigh",
    "optimize_field",
    "prepare_state",
    "probabilities",
    "project",
    "reduce_singlet_block",
    "spin_projections",
    "sweep_field",
    "time_in_seconds",
    "to_physical",
    "zero_field_ground_energy",
    "zero_field_ground_state",
]
