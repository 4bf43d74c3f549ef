#include "dqm/params.hpp"

#include <cmath>

#include "dqm/errors.hpp"

namespace dqm {

ModelParams::ModelParams(double beta, double hbar) : beta_(beta), hbar_(hbar) {
  if (!std::isfinite(beta)) fail(ErrorCode::InvalidArgument, "beta must be finite");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) fail(ErrorCode::InvalidArgument, "hbar must be positive");
}

double ModelParams::sqrt_abs_beta() const noexcept { return std::sqrt(std::abs(beta_)); }

Regime ModelParams::regime() const noexcept {
  if (beta_ < 0.0) return Regime::BoundedMomentum;
  if (beta_ > 0.0) return Regime::MinimalLength;
  return Regime::Undeformed;
}

double ModelParams::momentum_edge() const {
  if (beta_ == 0.0) fail(ErrorCode::BetaZero, "momentum edge undefined for beta = 0");
  return 1.0 / sqrt_abs_beta();
}

double ModelParams::minimal_position_uncertainty() const noexcept {
  return beta_ > 0.0 ? hbar_ * std::sqrt(beta_) : 0.0;
}

}  // namespace dqm
