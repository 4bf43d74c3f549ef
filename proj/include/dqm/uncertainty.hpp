#pragma once

#include <cstdint>
#include <vector>

#include "dqm/momspace.hpp"

namespace dqm {

struct Moments {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double dx = 0.0;
  double dp = 0.0;
  double robertson_rhs = 0.0;  ///< (hbar/2) |<1 + beta p^2>|
};

/// Expectation values through the grid inner product; the spreads are
/// ||(X - <x>) psi|| and ||(P - <p>) psi||. psi must be normalized to 1e-12.
Moments moments(const WaveFunction& psi, const DiscretizedOperator& X, const DiscretizedOperator& P,
                const ModelParams& params);

inline constexpr double kBoundSlackTolerance = 1e-10;

struct BoundCheck {
  double slack = 0.0;  ///< dx dp - robertson_rhs
  bool satisfied = false;
};

BoundCheck check_uncertainty_bound(const Moments& m);

/// Seeded family of smooth states: a Gaussian envelope of width `smoothness`
/// (in units of the grid half-length) times a random band-limited factor,
/// centred at a random point at least `clearance` half-lengths from the ends.
struct StateFamily {
  std::uint64_t seed = 0;
  int count = 0;
  double smoothness = 0.06;
  double clearance = 0.5;
};

/// Deterministic for a given seed: state k depends only on (seed, k).
/// Every state is normalized and vanishes to below 1e-10 at the end nodes.
std::vector<WaveFunction> sample_domain_states(const StateFamily& family, const GridPtr& grid);

}  // namespace dqm
