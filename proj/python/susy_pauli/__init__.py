"""Supersymmetric Pauli electron in nonstationary magnetic and electric fields."""

from ._core import (
    AuxSolution,
    BranchError,
    ConfigError,
    DomainError,
    FieldProfile,
    GridSpec,
    InstabilityError,
    NormalizationError,
    PoleError,
    PreconditionError,
    QuantumNumbers,
    SolverError,
    SusyError,
    analytic_constant,
    check_operators,
    eigenstate,
    pauli_residual,
    propagate,
    recommend_grid,
    solve_aux,
    spinor_norm,
    verify_algebra,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
