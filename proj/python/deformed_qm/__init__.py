"""Numerics for the deformed commutation relation [x, p] = i hbar (1 + beta p^2)."""

from ._core import (
    Error,
    Grid,
    ModelParams,
    __version__,
    build_grid,
    ccr_residual,
    deficiency_indices,
    dirichlet_oracle_eigenvalue,
    eigenfunction_value,
    eigenvector_overlap,
    eigenvector_overlap_quadrature,
    extension_diagonalize,
    extension_spectrum,
    finite_representation,
    fock_residuals,
    fourier_round_trip,
    lattice_gram,
    minimal_uncertainty,
    run_acceptance,
    solve_eigen_ode,
    u_of_lambda,
    uncertainty_slacks,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
