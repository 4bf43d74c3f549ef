#pragma once

// The beta > 0 structure: formal position eigenvectors and their overlap,
// the U(1) family of self-adjoint extensions of x with their equidistant
// spectra (2 r + s/pi) sqrt(beta), r in Z, the lattice-translation action of
// the local group, and the variational minimal position uncertainty.

#include <complex>
#include <span>
#include <vector>

#include "dqm/momspace.hpp"
#include "dqm/params.hpp"

namespace dqm {

/// Phase s in [0, 2 pi) of alpha = e^{is}.
class ExtensionLabel {
 public:
  explicit ExtensionLabel(double s);

  double s() const noexcept { return s_; }
  std::complex<double> alpha() const noexcept { return std::polar(1.0, s_); }

 private:
  double s_;
};

struct SpectrumLattice {
  double beta = 0.0;
  double s = 0.0;
  int r_min = 0;
  int r_max = 0;
  std::vector<double> values;  ///< v(r) for r = r_min..r_max

  double spacing() const;
};

struct Orbit {
  int r = 0;
  double beta = 0.0;
  std::vector<double> s_samples;
  std::vector<double> sweep;
  double lower = 0.0;       ///< inf of the orbit, v(r) at s = 0
  double upper = 0.0;       ///< sup of the orbit (approached as s -> 2 pi)
  double half_width = 0.0;  ///< (upper - lower) / 2 = sqrt(beta)
};

/// (2 sqrt(beta) / (pi (xi - xi'))) sin((xi - xi') pi / (2 sqrt(beta))); 1 at xi = xi'.
double eigenvector_overlap(double xi, double xi_prime, double beta);

/// Same scalar product by Gauss-Legendre quadrature of psi_xi^* psi_xi' over
/// the flattened interval; independent of the closed form.
double eigenvector_overlap_quadrature(double xi, double xi_prime, double beta, Index nodes = 128);

/// hbar (2 r + s/pi) sqrt(beta) for r in [r_min, r_max].
SpectrumLattice extension_spectrum(const ExtensionLabel& label, double beta, int r_min, int r_max,
                                   double hbar = 1.0);

/// s -> (s + sigma) mod 2 pi.
ExtensionLabel local_group_action(const ExtensionLabel& label, double sigma);

/// Samples v_r over s = 2 pi k / samples, k = 0..samples-1.
Orbit eigenvalue_orbit(int r, double beta, int samples);

/// Uniform midpoint grid covering the whole flattened interval.
GridPtr build_extension_grid(const ModelParams& params, Index n);

/// x_s = i hbar d/du on the flattened interval with phi(left) = e^{is} phi(right),
/// as a twisted Fourier pseudospectral matrix on an extension grid.
DiscretizedOperator extension_position_operator(const ExtensionLabel& label, const ModelParams& params,
                                                const GridPtr& grid);

struct ExtensionEigen {
  RVector eigenvalues;  ///< ascending
  CMatrix eigenvectors; ///< columns orthonormal in the grid inner product (half-densities)
  std::vector<int> lattice_index;  ///< r of each eigenvalue
  GridPtr grid;
};

/// Requires n >= 16 (GridTooSmall) and beta > 0 (WrongRegime).
ExtensionEigen extension_diagonalize(const ExtensionLabel& label, const ModelParams& params, Index n);

/// Column k pulled back to lambda-coordinates: psi(lambda_j) = (dlambda/du)^{-1/2} phi(u_j).
CVector pull_back_to_lambda(const ExtensionEigen& eig, Index k);

/// Gram matrix of formal eigenvectors at the m lowest non-negative lattice points of sigma_alpha.
RMatrix lattice_gram(const ExtensionLabel& label, double beta, Index m);

/// Gram matrix of formal eigenvectors at arbitrary points, from the closed form.
RMatrix overlap_gram(std::span<const double> xi, double beta);

/// Same Gram matrix by quadrature.
RMatrix overlap_gram_quadrature(std::span<const double> xi, double beta, Index nodes = 128);

struct MinimalUncertainty {
  double dx_min = 0.0;
  WaveFunction minimizer;
};

/// Minimizes dx over states vanishing at both ends of the flattened interval
/// (a Rayleigh-Ritz problem for -hbar^2 d^2/du^2 in a Legendre-Dirichlet
/// basis of n - 2 functions). Returns an upper bound of hbar sqrt(beta)
/// converging to it; the minimizer is real and even, so <x> = 0.
/// Requires n >= 128 (GridTooSmall).
MinimalUncertainty minimal_uncertainty_search(const ModelParams& params, Index n);

/// Smallest eigenvalue of -d^2/du^2 with Dirichlet ends on an interval of
/// length pi / sqrt(beta), by Chebyshev collocation of order n.
double dirichlet_oracle_eigenvalue(double beta, Index n = 48);

}  // namespace dqm
