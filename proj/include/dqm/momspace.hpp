#pragma once

// Momentum-space spectral representation of [x,p] = i hbar (1 + beta p^2):
//   p psi(lambda) = lambda psi(lambda)
//   x psi(lambda) = i hbar ((1 + beta lambda^2) d/dlambda + beta lambda) psi(lambda)
//   <psi1|psi2>   = int dlambda psi1^* psi2
//
// Two discretizations are provided. On lambda-grids states are sampled
// directly. On u-grids, with u the flattening coordinate (du = dlambda /
// (1 + beta lambda^2)), states are stored as half-densities
//   phi(u) = (dlambda/du)^{1/2} psi(lambda(u)),
// so the plain quadrature sum already equals the lambda-integral and x acts
// as i hbar d/du.

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dqm/params.hpp"

namespace dqm {

enum class Coordinate { Lambda, U };
enum class Scheme { GaussLegendre, Uniform };

/// Bijection between lambda and the flattening coordinate u.
///   beta < 0: u = artanh(sqrt|beta| lambda) / sqrt|beta|, lambda in I_c <-> u in R
///   beta > 0: u = arctan(sqrt beta lambda) / sqrt beta,   lambda in R   <-> |u| < pi / (2 sqrt beta)
class FlatMap {
 public:
  explicit FlatMap(double beta);

  double beta() const noexcept { return beta_; }
  double u_of_lambda(double lambda) const;
  double lambda_of_u(double u) const;
  /// dlambda/du = 1 + beta lambda^2, evaluated from u (stable near the edges).
  double jacobian_at_u(double u) const;
  /// Open range of u.
  std::pair<double, double> u_range() const;

 private:
  double beta_;
  double root_;
};

/// Throws BetaZero for beta == 0.
FlatMap flat_coordinate_map(double beta);

class Grid {
 public:
  Grid(Coordinate coordinate, Scheme scheme, double beta, double lo, double hi, RVector nodes, RVector weights,
       bool full_line = false);

  Coordinate coordinate() const noexcept { return coordinate_; }
  Scheme scheme() const noexcept { return scheme_; }
  double beta() const noexcept { return beta_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  Index size() const noexcept { return nodes_.size(); }
  /// True for beta < 0 lambda-grids extending past the momentum edges.
  bool full_line() const noexcept { return full_line_; }

  const RVector& nodes() const noexcept { return nodes_; }
  const RVector& weights() const noexcept { return weights_; }
  /// Differentiation matrix in the grid coordinate.
  const RMatrix& differentiation() const noexcept { return diff_; }
  /// Barycentric interpolation weights (Gauss-Legendre grids only; empty otherwise).
  const RVector& barycentric() const noexcept { return bary_; }

  /// Momentum eigenvalue lambda at each node.
  RVector lambda_values() const;
  /// dlambda/du at each node; all ones on lambda-grids.
  RVector jacobian() const;

  bool same_as(const Grid& other) const noexcept;

 private:
  Coordinate coordinate_;
  Scheme scheme_;
  double beta_;
  double lo_, hi_;
  RVector nodes_, weights_;
  RMatrix diff_;
  RVector bary_;
  bool full_line_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline constexpr double kDefaultEdgeShrink = 1e-3;

/// Builds a grid. The meaning of `truncation` depends on the case:
///   lambda, beta < 0: shrink eps in (0,1), interval +-(1 - eps)|beta|^{-1/2}   (default 1e-3)
///   lambda, beta > 0: cutoff Lambda_max > 0, interval +-Lambda_max           (default 100/sqrt beta)
///   lambda, beta = 0: cutoff Lambda_max > 0                                  (default 10)
///   u, beta < 0: half-width U > 0, interval +-U                              (default 12/sqrt|beta|)
///   u, beta > 0: shrink eps in [0,1), interval +-(1 - eps) pi/(2 sqrt beta)    (default 1e-3)
/// u-coordinates need beta != 0 (BetaZero). Requires n >= 8 (GridTooSmall).
GridPtr build_grid(const ModelParams& params, Index n, Coordinate coordinate, Scheme scheme,
                   std::optional<double> truncation = std::nullopt);

/// beta < 0 lambda-grid over [-half_width, half_width] with half_width beyond
/// the momentum edges, for exhibiting the commutant step operators.
GridPtr build_full_line_grid(const ModelParams& params, Index n, double half_width);

struct WaveFunction {
  CVector values;
  GridPtr grid;
};

/// Samples psi(lambda) onto the grid in its native convention (half-density on u-grids).
WaveFunction sample_state(const GridPtr& grid, const std::function<std::complex<double>(double)>& psi_of_lambda);

/// Samples a function of the grid coordinate directly, without any Jacobian factor.
WaveFunction sample_in_grid_coordinate(const GridPtr& grid,
                                       const std::function<std::complex<double>(double)>& f);

struct DiscretizedOperator {
  CMatrix matrix;
  GridPtr grid;
  bool hermitianized = false;

  CVector apply(const CVector& v) const { return matrix * v; }
};

DiscretizedOperator momentum_operator(const GridPtr& grid);

/// lambda-grids: i hbar ((1 + beta Lambda^2) D + beta Lambda); u-grids: i hbar D_u.
/// Both are then symmetrized with respect to the quadrature inner product.
/// Requires at least 16 nodes (GridTooSmall).
DiscretizedOperator position_operator(const GridPtr& grid, const ModelParams& params);

/// A <- (A + W^{-1} A^+ W) / 2.
DiscretizedOperator hermitianize(DiscretizedOperator op);

/// max |W A - (W A)^+| / max |W A|.
double hermiticity_residual(const DiscretizedOperator& op);

std::complex<double> inner_product(const WaveFunction& f, const WaveFunction& g);
double norm(const WaveFunction& f);
WaveFunction normalized(WaveFunction f);

/// Smooth Gaussian bumps centred at evenly spaced interior points, unit peak.
std::vector<CVector> interior_test_states(const Grid& grid, int count = 5, double relative_width = 0.025);

/// Relative max-norm of ([X,P] - i hbar (1 + beta P^2)) psi over interior
/// rows, maximized over `states` (default: interior_test_states). Rows closer
/// than interior_margin to either end are ignored. Each state's residual is
/// divided by max(1, max |i hbar (1 + beta P^2) psi|).
double ccr_residual(const DiscretizedOperator& X, const DiscretizedOperator& P, const ModelParams& params,
                    Index interior_margin, const std::vector<CVector>& states = {});

/// G(lambda) = a Theta(lambda - |beta|^{-1/2}) + b Theta(lambda + |beta|^{-1/2}).
/// The grid must reach strictly past both momentum edges (IntervalTooSmall).
DiscretizedOperator commutant_step_operator(std::complex<double> a_amp, std::complex<double> b_amp,
                                            const GridPtr& grid, const ModelParams& params);

/// || (A B - B A) psi || in the grid norm.
double commutator_norm(const DiscretizedOperator& A, const DiscretizedOperator& B, const WaveFunction& psi);

void require_same_grid(const GridPtr& a, const GridPtr& b);

}  // namespace dqm
