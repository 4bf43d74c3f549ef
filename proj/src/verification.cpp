#include "dqm/verification.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "dqm/algebra.hpp"
#include "dqm/eigenstructure.hpp"
#include "dqm/errors.hpp"
#include "dqm/extensions.hpp"
#include "dqm/momspace.hpp"
#include "dqm/parallel.hpp"
#include "dqm/uncertainty.hpp"

namespace dqm {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CriterionResult make(int id, std::string name, double metric, double tolerance, bool passed, std::string detail) {
  return CriterionResult{id, std::move(name), passed, metric, tolerance, std::move(detail)};
}

}  // namespace

CriterionResult check_overlap_formula(const AcceptanceConfig&) {
  const auto start = Clock::now();
  double worst = 0.0;
  for (double beta : {0.1, 1.0, 10.0}) {
    const double root = std::sqrt(beta);
    for (double k : {0.0, 1.0, 2.0, 3.5}) {
      const double xi = 0.3 * root;
      const double xi_prime = xi - k * root;
      const double closed = eigenvector_overlap(xi, xi_prime, beta);
      const double numeric = eigenvector_overlap_quadrature(xi, xi_prime, beta);
      worst = std::max(worst, std::abs(closed - numeric));
    }
  }
  const bool fast = seconds_since(start) < 1.0;
  constexpr double tol = 1e-10;
  return make(1, "overlap_formula", worst, tol, worst < tol && fast,
              std::string("max |quadrature - closed form| over 12 pairs; runtime under 1 s: ") +
                  (fast ? "yes" : "no"));
}

CriterionResult check_extension_spectra(const AcceptanceConfig&) {
  constexpr Index n = 256;
  constexpr double tol = 1e-6;
  double worst_value = 0.0;
  double worst_spacing = 0.0;
  for (double beta : {0.25, 1.0}) {
    const ModelParams params(beta);
    const double root = std::sqrt(beta);
    for (double s : {0.0, kPi / 2.0, kPi}) {
      const ExtensionLabel label(s);
      const auto eig = extension_diagonalize(label, params, n);
      const int r_lo = eig.lattice_index.front();
      const auto lattice = extension_spectrum(label, beta, r_lo, r_lo + static_cast<int>(n) - 1);
      for (Index k = 0; k < n; ++k) {
        const double v = lattice.values[static_cast<std::size_t>(k)];
        worst_value = std::max(worst_value, std::abs(eig.eigenvalues(k) - v) / std::max(std::abs(v), root));
        if (k > 0)
          worst_spacing =
              std::max(worst_spacing, std::abs((eig.eigenvalues(k) - eig.eigenvalues(k - 1)) - 2.0 * root) / (2.0 * root));
      }
    }
  }
  const double metric = std::max(worst_value, worst_spacing);
  return make(2, "extension_spectra", metric, tol, metric < tol,
              "max relative eigenvalue error " + format_double(worst_value) + ", spacing error " +
                  format_double(worst_spacing) + " (N = 256, 6 extensions)");
}

CriterionResult check_lattice_orthonormality(const AcceptanceConfig&) {
  constexpr Index m = 20;
  constexpr double tol = 1e-8;
  double worst_closed = 0.0;
  double worst_quad = 0.0;
  for (double beta : {0.25, 1.0, 4.0}) {
    const ExtensionLabel label(0.7);
    const auto lattice = extension_spectrum(label, beta, -m / 2, -m / 2 + static_cast<int>(m) - 1);
    const RMatrix closed = overlap_gram(lattice.values, beta);
    const RMatrix quad = overlap_gram_quadrature(lattice.values, beta);
    worst_closed = std::max(worst_closed, (closed - RMatrix::Identity(m, m)).cwiseAbs().maxCoeff());
    worst_quad = std::max(worst_quad, (quad - RMatrix::Identity(m, m)).cwiseAbs().maxCoeff());
  }
  const double metric = std::max(worst_closed, worst_quad);
  return make(3, "lattice_orthonormality", metric, tol, metric < tol,
              "max |G - I|: closed form " + format_double(worst_closed) + ", quadrature " + format_double(worst_quad));
}

CriterionResult check_minimal_uncertainty(const AcceptanceConfig& cfg) {
  const Index n = std::max<Index>(cfg.grid_size, 512);
  bool ok = true;
  double worst_excess = 0.0;
  double worst_oracle = 0.0;
  std::ostringstream detail;
  for (double beta : {0.25, 1.0, 4.0}) {
    const ModelParams params(beta);
    const double root = std::sqrt(beta);
    const auto result = minimal_uncertainty_search(params, n);
    const double excess = result.dx_min / root - 1.0;
    worst_excess = std::max(worst_excess, std::abs(excess));
    if (result.dx_min < root - 1e-9 || result.dx_min > 1.01 * root) ok = false;
    const double oracle = dirichlet_oracle_eigenvalue(beta);
    worst_oracle = std::max(worst_oracle, std::abs(oracle - beta));
    detail << "beta=" << format_double(beta) << " dx_min/sqrt(beta)-1=" << format_double(excess) << "; ";
  }
  if (worst_oracle > 1e-9) ok = false;
  detail << "Dirichlet oracle max |mu - beta|=" << format_double(worst_oracle);
  return make(4, "minimal_uncertainty", worst_excess, 0.01, ok, detail.str());
}

CriterionResult check_deficiency_classification(const AcceptanceConfig&) {
  const auto start = Clock::now();
  bool ok = true;
  std::ostringstream detail;
  int mismatches = 0;
  for (double beta : {0.1, 1.0, -0.1, -1.0}) {
    const ModelParams params(beta);
    const int expected = beta > 0.0 ? 1 : 0;
    try {
      const auto rep = deficiency_indices(params);
      if (rep.n_plus != expected || rep.n_minus != expected) ++mismatches;
      detail << "beta=" << format_double(beta) << " (" << rep.n_plus << "," << rep.n_minus
             << ") exponents +i:[" << format_double(rep.plus.left.exponent) << ","
             << format_double(rep.plus.right.exponent) << "] -i:[" << format_double(rep.minus.left.exponent) << ","
             << format_double(rep.minus.right.exponent) << "]; ";
    } catch (const Error& e) {
      ++mismatches;
      detail << "beta=" << format_double(beta) << " error " << e.what() << "; ";
    }
  }
  const bool fast = seconds_since(start) < 5.0;
  ok = mismatches == 0 && fast;
  detail << "runtime under 5 s: " << (fast ? "yes" : "no");
  return make(5, "deficiency_classification", mismatches, 0.0, ok, detail.str());
}

CriterionResult check_fourier_round_trip(const AcceptanceConfig& cfg) {
  const Index n = std::max<Index>(cfg.grid_size, 512);
  const ModelParams params(-1.0);
  const GridPtr grid = build_grid(params, n, Coordinate::Lambda, Scheme::GaussLegendre);
  const auto xi = uniform_xi_grid(200.0, 0.5);
  OrthoCompletenessOptions opts;
  opts.test_states = sample_domain_states(StateFamily{cfg.seed, 10}, grid);
  const auto res = verify_orthocompleteness(params, grid, xi, opts);
  constexpr double tol = 1e-6;
  const double metric = std::max(res.compl_residual, res.isometry_defect);
  return make(6, "fourier_round_trip", metric, tol, res.compl_residual < tol && res.isometry_defect < tol,
              "round-trip L2 error " + format_double(res.compl_residual) + ", isometry defect " +
                  format_double(res.isometry_defect) + ", mollified Gram deviation " +
                  format_double(res.ortho_residual));
}

CriterionResult check_eigenfunction_oracle(const AcceptanceConfig& cfg) {
  constexpr int pairs = 50;
  constexpr double tol = 1e-8;
  std::mt19937_64 engine(cfg.seed ^ 0x5eedULL);
  std::uniform_real_distribution<double> log_beta(-1.0, 1.0);
  std::uniform_real_distribution<double> xi_dist(-5.0, 5.0);
  std::bernoulli_distribution negative(0.5);
  struct Case {
    double beta, xi;
  };
  std::vector<Case> cases;
  for (int k = 0; k < pairs; ++k) {
    const double mag = std::pow(10.0, log_beta(engine));
    const double beta = negative(engine) ? -mag : mag;
    cases.push_back({beta, xi_dist(engine)});
  }
  std::vector<double> errors(cases.size());
  parallel_for(cases.size(), [&](std::size_t k) {
    const auto [beta, xi] = cases[k];
    const ModelParams params(beta);
    const GridPtr grid = beta < 0.0 ? build_grid(params, 32, Coordinate::Lambda, Scheme::GaussLegendre, 0.1)
                                    : build_grid(params, 32, Coordinate::Lambda, Scheme::GaussLegendre,
                                                 5.0 / std::sqrt(beta));
    const EigenfunctionParams ep(xi, beta, kContinuumNormalization);
    const WaveFunction ode = solve_eigen_ode(xi, params, grid);
    double worst = 0.0;
    for (Index i = 0; i < grid->size(); ++i) {
      const std::complex<double> closed = eigenfunction_value(ep, grid->nodes()(i));
      worst = std::max(worst, std::abs(ode.values(i) - closed) / std::abs(closed));
    }
    errors[k] = worst;
  });
  const double worst = *std::max_element(errors.begin(), errors.end());

  const ModelParams tiny(1e-4);
  const GridPtr grid = build_grid(tiny, 32, Coordinate::Lambda, Scheme::GaussLegendre, 1.0);
  const WaveFunction ode = solve_eigen_ode(2.0, tiny, grid);
  double plane = 0.0;
  for (Index i = 0; i < grid->size(); ++i) {
    const std::complex<double> wave = kContinuumNormalization * std::polar(1.0, -2.0 * grid->nodes()(i));
    plane = std::max(plane, std::abs(ode.values(i) - wave) / kContinuumNormalization);
  }
  const bool ok = worst < tol && plane < 1e-3;
  return make(7, "eigenfunction_oracle", worst, tol, ok,
              "max relative closed-form vs ODE deviation over 50 (beta, xi); beta=1e-4 plane-wave deviation " +
                  format_double(plane));
}

CriterionResult check_fock_algebra(const AcceptanceConfig&) {
  using namespace algebra;
  constexpr Index n = 16;
  constexpr double tol = 1e-12;
  double worst5 = 0.0;
  double worst7 = 0.0;
  for (Real q : {Real(0.5), Real(1), Real(2)}) {
    const auto pair = build_q_fock(q, n);
    worst5 = std::max(worst5, static_cast<double>(fock_relation_residual(pair, n - 1)));
    const auto osc = QOscillatorParams::from_length(q, 1);
    const auto obs = ladder_to_observables(pair, osc);
    worst7 = std::max(worst7, static_cast<double>(deformed_commutator_residual(obs.X, obs.P, osc, n - 2)));
  }
  const double metric = std::max(worst5, worst7);
  return make(8, "fock_algebra", metric, tol, worst5 < tol && worst7 < tol,
              "ladder relation residual " + format_double(worst5) + ", deformed commutator residual " +
                  format_double(worst7) + " (N = 16, q in {1/2, 1, 2})");
}

CriterionResult check_uncertainty_bound(const AcceptanceConfig& cfg) {
  constexpr int count = 1000;
  double min_slack = HUGE_VAL;
  double max_dp_excess = -HUGE_VAL;
  double min_dx_excess = HUGE_VAL;
  for (double beta : {1.0, -1.0}) {
    const ModelParams params(beta);
    const GridPtr grid = build_grid(params, 256, Coordinate::U, Scheme::GaussLegendre);
    const auto X = position_operator(grid, params);
    const auto P = momentum_operator(grid);
    const auto states = sample_domain_states(StateFamily{cfg.seed + (beta > 0 ? 1u : 2u), count}, grid);
    std::vector<Moments> ms(states.size());
    parallel_for(states.size(), [&](std::size_t k) { ms[k] = moments(states[k], X, P, params); });
    for (const auto& m : ms) {
      min_slack = std::min(min_slack, check_uncertainty_bound(m).slack);
      if (beta < 0.0) max_dp_excess = std::max(max_dp_excess, m.dp - params.momentum_edge());
      if (beta > 0.0) min_dx_excess = std::min(min_dx_excess, m.dx - params.minimal_position_uncertainty());
    }
  }
  const bool ok = min_slack >= -kBoundSlackTolerance && max_dp_excess <= 0.0 && min_dx_excess >= -1e-9;
  return make(9, "uncertainty_bound", min_slack, -kBoundSlackTolerance, ok,
              "min slack over 2000 states " + format_double(min_slack) + "; beta<0 max(dp - |beta|^-1/2) " +
                  format_double(max_dp_excess) + "; beta>0 min(dx - sqrt(beta)) " + format_double(min_dx_excess));
}

CriterionResult check_finite_representations(const AcceptanceConfig&) {
  double worst = 0.0;
  const ModelParams unit(-1.0);
  const std::vector<int> signs{1, -1, 1};
  const std::vector<double> positions{0.3, -1.7, 2.5};
  const auto rep = finite_dim_rep(unit, signs, positions);
  const auto sides = finite_rep_ccr_sides(rep, unit);
  worst = std::max({worst, sides.commutator.cwiseAbs().maxCoeff(), sides.rhs.cwiseAbs().maxCoeff()});

  const ModelParams quarter(-4.0);
  const std::vector<int> one{1};
  const std::vector<double> origin{0.0};
  const auto rep1 = finite_dim_rep(quarter, one, origin);
  const auto sides1 = finite_rep_ccr_sides(rep1, quarter);
  worst = std::max({worst, sides1.commutator.cwiseAbs().maxCoeff(), sides1.rhs.cwiseAbs().maxCoeff()});
  const bool half = rep1.P(0, 0) == std::complex<double>(0.5, 0.0);

  bool rejected = false;
  try {
    finite_dim_rep(ModelParams(1.0), one, origin);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::WrongRegime;
  }
  return make(10, "finite_representations", worst, 0.0, worst == 0.0 && half && rejected,
              std::string("both sides vanish exactly; beta=-4 momentum 1/2: ") + (half ? "yes" : "no") +
                  "; beta>0 rejected: " + (rejected ? "yes" : "no"));
}

CriterionResult check_extension_domain_agreement(const AcceptanceConfig& cfg) {
  constexpr double tol = 1e-8;
  const ModelParams params(1.0);
  const GridPtr grid = build_extension_grid(params, 256);
  const auto x0 = extension_position_operator(ExtensionLabel(0.0), params, grid);
  const auto xpi = extension_position_operator(ExtensionLabel(kPi), params, grid);
  const auto states = sample_domain_states(StateFamily{cfg.seed + 3u, 20}, grid);
  double worst = 0.0;
  for (const auto& psi : states)
    worst = std::max(worst, norm(WaveFunction{x0.apply(psi.values) - xpi.apply(psi.values), grid}));
  return make(11, "extension_domain_agreement", worst, tol, worst < tol,
              "max ||(x_0 - x_pi) psi|| over 20 boundary-vanishing states");
}

std::vector<CriterionResult> run_numeric_criteria(const AcceptanceConfig& cfg) {
  return {check_overlap_formula(cfg),          check_extension_spectra(cfg),
          check_lattice_orthonormality(cfg),   check_minimal_uncertainty(cfg),
          check_deficiency_classification(cfg), check_fourier_round_trip(cfg),
          check_eigenfunction_oracle(cfg),     check_fock_algebra(cfg),
          check_uncertainty_bound(cfg),        check_finite_representations(cfg),
          check_extension_domain_agreement(cfg)};
}

CriterionResult check_determinism(const AcceptanceConfig& cfg, const std::vector<CriterionResult>& first) {
  const auto second = run_numeric_criteria(cfg);
  int differing = 0;
  for (std::size_t k = 0; k < std::max(first.size(), second.size()); ++k) {
    if (k >= first.size() || k >= second.size()) {
      ++differing;
      continue;
    }
    const auto& a = first[k];
    const auto& b = second[k];
    const bool same = a.id == b.id && a.name == b.name && a.passed == b.passed &&
                      std::memcmp(&a.metric, &b.metric, sizeof(double)) == 0 && a.detail == b.detail;
    if (!same) ++differing;
  }
  return make(12, "determinism", differing, 0.0, differing == 0,
              "criteria whose results differ between two identical runs");
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg) {
  auto results = run_numeric_criteria(cfg);
  results.push_back(check_determinism(cfg, results));
  return results;
}

}  // namespace dqm
