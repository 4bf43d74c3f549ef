#pragma once

#include <Eigen/Dense>

namespace dqm {

using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Sign of the deformation parameter selects one of the short-distance
/// structures of [x,p] = i hbar (1 + beta p^2).
enum class Regime {
  BoundedMomentum,  ///< beta < 0: momentum space is the interval |p| <= |beta|^{-1/2}
  Undeformed,       ///< beta == 0: ordinary canonical pair
  MinimalLength,    ///< beta > 0: position uncertainty bounded below by hbar sqrt(beta)
};

/// hbar and beta. Immutable once built; the constructor rejects hbar <= 0
/// and non-finite beta.
class ModelParams {
 public:
  explicit ModelParams(double beta, double hbar = 1.0);

  double beta() const noexcept { return beta_; }
  double hbar() const noexcept { return hbar_; }
  double sqrt_abs_beta() const noexcept;
  Regime regime() const noexcept;

  /// |beta|^{-1/2}; only meaningful for beta != 0.
  double momentum_edge() const;

  /// hbar sqrt(beta) for beta > 0, zero otherwise.
  double minimal_position_uncertainty() const noexcept;

 private:
  double beta_;
  double hbar_;
};

}  // namespace dqm
