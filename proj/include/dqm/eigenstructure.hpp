#pragma once

// Generalized eigenfunctions of the position operator in the momentum-space
// representation, the ODE they solve, deficiency-index classification, the
// beta < 0 generalized Fourier transform, and finite-dimensional beta < 0
// representations.
//
// With u the flattening coordinate, the eigenfunction for eigenvalue xi is
//   psi_xi(lambda) = N (1 + beta lambda^2)^{-1/2} exp(-i xi u(lambda) / hbar),
// which for beta < 0 reads N (1 - |beta| lambda^2)^{-1/2}
// (1 - sqrt|beta| lambda)^{i xi / (2 sqrt|beta|)} (1 + sqrt|beta| lambda)^{-i xi / (2 sqrt|beta|)}.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "dqm/momspace.hpp"
#include "dqm/params.hpp"

namespace dqm {

/// (2 pi)^{-1/2}: continuum normalization of the beta < 0 position eigenfunctions.
inline const double kContinuumNormalization = 1.0 / std::sqrt(2.0 * kPi);

/// (sqrt(beta) / pi)^{1/2}: makes the beta > 0 formal eigenvectors unit vectors.
double unit_normalization(double beta);

struct EigenfunctionParams {
  std::complex<double> xi;
  double beta;
  double normalization;
  double hbar = 1.0;

  /// Default normalization is the regime's natural one:
  /// (2 pi)^{-1/2} for beta < 0, (sqrt(beta)/pi)^{1/2} for beta > 0.
  EigenfunctionParams(std::complex<double> xi, double beta, std::optional<double> normalization = std::nullopt,
                      double hbar = 1.0);
};

/// Which exponent to use for the (1 -+ sqrt|beta| lambda) factors when beta < 0.
/// `Unscaled` uses +-i xi / 2 with no 1/sqrt|beta| factor and solves the
/// eigenvalue ODE only at |beta| = 1.
enum class ExponentForm { Scaled, Unscaled };

std::complex<double> eigenfunction_value(const EigenfunctionParams& params, double lambda,
                                         ExponentForm form = ExponentForm::Scaled);

/// Half-density form on the u-axis: N exp(-i xi u / hbar).
std::complex<double> flat_eigenfunction_value(const EigenfunctionParams& params, double u);

/// |i hbar ((1 + beta l^2) psi' + beta l psi) - xi psi| / |xi psi| at lambda,
/// with psi' from a fourth-order central difference of step h.
double eigen_ode_relative_residual(const EigenfunctionParams& params, double lambda, ExponentForm form,
                                   double h = 1e-4);

/// Integrates i hbar ((1 + beta l^2) psi' + beta l psi) = xi psi outward from
/// lambda = 0 (adaptive Runge-Kutta-Fehlberg 7(8), relative tolerance 1e-11),
/// starting from psi(0) = initial (default (2 pi)^{-1/2}). Values are returned
/// in the grid's convention (half-densities on u-grids).
WaveFunction solve_eigen_ode(std::complex<double> xi, const ModelParams& params, const GridPtr& grid,
                             std::optional<std::complex<double>> initial = std::nullopt);

/// Integrability record of |psi_xi|^2 towards one edge of the domain.
struct EdgeRecord {
  std::vector<double> eps;
  std::vector<double> integrals;
  double exponent = 0.0;      ///< fitted d log I / d log eps over the tail of the sequence
  double fit_residual = 0.0;  ///< RMS deviation of that log-log fit
  bool converged = false;
  bool divergent = false;
};

struct DeficiencyProbe {
  std::complex<double> xi;
  EdgeRecord left;
  EdgeRecord right;
  bool normalizable = false;
};

struct DeficiencyReport {
  int n_plus = 0;
  int n_minus = 0;
  double boundary_exponent_plus = 0.0;
  double boundary_exponent_minus = 0.0;
  DeficiencyProbe plus;
  DeficiencyProbe minus;
};

/// Classification thresholds for the epsilon-sequence analysis.
inline constexpr double kDivergentExponent = -0.5;
inline constexpr double kMaxFitResidual = 0.05;
inline constexpr double kConvergedRelativeStep = 1e-8;

/// Dimensions of ker(x^* -+ i kappa), kappa = max(1, sqrt|beta|), from the
/// integrability of the eigenfunctions at both edges. Throws InconclusiveFit
/// when an edge is neither clearly convergent nor clearly divergent.
DeficiencyReport deficiency_indices(const ModelParams& params);

/// Position-space samples psi(xi_j) with trapezoid weights on an ascending xi-grid.
struct PositionWaveFunction {
  RVector xi;
  RVector weights;
  CVector values;
};

RVector trapezoid_weights(std::span<const double> ascending);

/// Uniform xi-grid on [-half_width, half_width] with the given spacing.
std::vector<double> uniform_xi_grid(double half_width, double spacing);

/// psi(xi_j) = sum_i w_i conj(psi_xi_j(lambda_i)) psi(lambda_i), beta < 0 only (WrongRegime).
PositionWaveFunction fourier_forward(const WaveFunction& psi, std::span<const double> xi, const ModelParams& params);

/// psi(lambda_i) = sum_j omega_j psi_xi_j(lambda_i) psi(xi_j), onto the given momentum grid.
WaveFunction fourier_inverse(const PositionWaveFunction& psi, const GridPtr& grid, const ModelParams& params);

struct OrthoCompleteness {
  double ortho_residual = 0.0;
  double compl_residual = 0.0;
  double isometry_defect = 0.0;  ///< max | ||psi(xi)|| - ||psi(lambda)|| | over the test states
  std::vector<double> state_errors;
  bool degraded = false;  ///< some test state exceeded the completeness tolerance
};

struct OrthoCompletenessOptions {
  std::optional<double> normalization;        ///< override for N in the kernel under test
  std::vector<WaveFunction> test_states;      ///< default: 10 seeded domain states
  std::vector<double> mollifier_centres{-50.0, -25.0, 0.0, 25.0, 50.0};
  double mollifier_width = 2.0;
  double tolerance = 1e-6;
};

/// Orthonormality through Gaussian-mollified eigenfunction pairings (the
/// calibrated Gram matrix should be the identity), and completeness through
/// forward/inverse round trips.
OrthoCompleteness verify_orthocompleteness(const ModelParams& params, const GridPtr& grid, std::span<const double> xi,
                                           const OrthoCompletenessOptions& options = {});

struct FiniteRep {
  std::vector<int> momentum_signs;
  std::vector<double> positions;
  Index dim = 0;
  CMatrix X;
  CMatrix P;
};

/// X = diag(positions), P = diag(sign_i |beta|^{-1/2}); beta < 0 only.
FiniteRep finite_dim_rep(const ModelParams& params, std::span<const int> signs, std::span<const double> positions);

/// Both sides of [x,p] = i hbar (1 + beta p^2) for a finite representation.
struct CcrSides {
  CMatrix commutator;
  CMatrix rhs;
};
CcrSides finite_rep_ccr_sides(const FiniteRep& rep, const ModelParams& params);

}  // namespace dqm
