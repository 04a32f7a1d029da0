"""Decoherence-free subspaces, noiseless subsystems and dynamical decoupling."""

from ._core import (  # noqa: F401
    BranchAmbiguityError,
    ConfigError,
    DimensionError,
    Error,
    PreconditionError,
    ValidationFailed,
    apply_collective_dephasing,
    bratteli_paths,
    cdd_bound,
    collective_pauli_group,
    collective_spin_generators,
    decompose,
    decoupling_error,
    dephasing_dfs_enumerate,
    deutsch_demo,
    exchange_op,
    expm_skew_hermitian,
    four_qubit_dfs,
    interaction_hamiltonian,
    ket,
    op_norm,
    pauli_string,
    rate_table,
    run_sweep_csv,
    spin_state,
    three_qubit_ns_code,
    version,
)

__version__ = version()
