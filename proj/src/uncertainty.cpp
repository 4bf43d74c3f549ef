#include "dqm/uncertainty.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "dqm/errors.hpp"

namespace dqm {

Moments moments(const WaveFunction& psi, const DiscretizedOperator& X, const DiscretizedOperator& P,
                const ModelParams& params) {
  require_same_grid(psi.grid, X.grid);
  require_same_grid(psi.grid, P.grid);
  const double n2 = inner_product(psi, psi).real();
  if (std::abs(n2 - 1.0) > 1e-12) fail(ErrorCode::NotNormalized, "state must be normalized");

  const WaveFunction x_psi{X.apply(psi.values), psi.grid};
  const WaveFunction p_psi{P.apply(psi.values), psi.grid};
  Moments m;
  m.mean_x = inner_product(psi, x_psi).real();
  m.mean_p = inner_product(psi, p_psi).real();
  m.dx = norm(WaveFunction{x_psi.values - m.mean_x * psi.values, psi.grid});
  m.dp = norm(WaveFunction{p_psi.values - m.mean_p * psi.values, psi.grid});
  const double p2 = inner_product(p_psi, p_psi).real();
  m.robertson_rhs = 0.5 * params.hbar() * std::abs(1.0 + params.beta() * p2);
  return m;
}

BoundCheck check_uncertainty_bound(const Moments& m) {
  BoundCheck check;
  check.slack = m.dx * m.dp - m.robertson_rhs;
  check.satisfied = check.slack >= -kBoundSlackTolerance;
  return check;
}

std::vector<WaveFunction> sample_domain_states(const StateFamily& family, const GridPtr& grid) {
  if (family.count < 0) fail(ErrorCode::InvalidArgument, "state count must be non-negative");
  if (!(family.smoothness > 0.0) || !(family.clearance > 0.0 && family.clearance < 1.0))
    fail(ErrorCode::InvalidArgument, "state family needs smoothness > 0 and clearance in (0, 1)");
  const double mid = 0.5 * (grid->lo() + grid->hi());
  const double half = 0.5 * grid->length();
  const double w = family.smoothness;
  constexpr int kBand = 2;

  std::vector<WaveFunction> states;
  states.reserve(static_cast<std::size_t>(family.count));
  for (int k = 0; k < family.count; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(family.seed), static_cast<std::uint32_t>(family.seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 engine(seq);
    std::uniform_real_distribution<double> centre_dist(-(1.0 - family.clearance), 1.0 - family.clearance);
    std::normal_distribution<double> coeff_dist(0.0, 1.0);
    const double centre = centre_dist(engine);
    std::complex<double> coeffs[2 * kBand + 1];
    for (auto& c : coeffs) {
      const double re = coeff_dist(engine);
      const double im = coeff_dist(engine);
      c = {re, im};
    }
    WaveFunction wf{CVector(grid->size()), grid};
    for (Index i = 0; i < grid->size(); ++i) {
      const double z = ((grid->nodes()(i) - mid) / half - centre) / w;
      std::complex<double> band = 0.0;
      for (int b = -kBand; b <= kBand; ++b) band += coeffs[b + kBand] * std::polar(1.0, 0.5 * b * z);
      wf.values(i) = std::exp(-0.5 * z * z) * band;
    }
    wf = normalized(std::move(wf));
    const double edge = std::max(std::abs(wf.values(0)), std::abs(wf.values(grid->size() - 1)));
    if (edge >= 1e-10)
      fail(ErrorCode::InvalidArgument, "state family too wide for the grid: boundary values are not negligible");
    states.push_back(std::move(wf));
  }
  return states;
}

}  // namespace dqm
