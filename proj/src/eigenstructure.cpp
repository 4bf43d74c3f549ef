#include "dqm/eigenstructure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "dqm/errors.hpp"
#include "dqm/parallel.hpp"
#include "dqm/quadrature.hpp"
#include "dqm/uncertainty.hpp"

namespace dqm {

double unit_normalization(double beta) {
  if (!(beta > 0.0)) fail(ErrorCode::WrongRegime, "unit normalization is defined for beta > 0");
  return std::sqrt(std::sqrt(beta) / kPi);
}

namespace {

double default_normalization(double beta, double hbar) {
  if (beta > 0.0) return unit_normalization(beta);
  return 1.0 / std::sqrt(2.0 * kPi * hbar);
}

}  // namespace

EigenfunctionParams::EigenfunctionParams(std::complex<double> xi_, double beta_, std::optional<double> normalization_,
                                         double hbar_)
    : xi(xi_), beta(beta_), normalization(normalization_.value_or(0.0)), hbar(hbar_) {
  if (beta == 0.0 || !std::isfinite(beta)) fail(ErrorCode::BetaZero, "eigenfunctions need finite beta != 0");
  if (!(hbar > 0.0)) fail(ErrorCode::InvalidArgument, "hbar must be positive");
  if (!normalization_) normalization = default_normalization(beta, hbar);
  if (!(normalization > 0.0)) fail(ErrorCode::InvalidArgument, "normalization must be positive");
}

std::complex<double> eigenfunction_value(const EigenfunctionParams& p, double lambda, ExponentForm form) {
  const double root = std::sqrt(std::abs(p.beta));
  const std::complex<double> minus_i(0.0, -1.0);
  if (p.beta < 0.0) {
    const double t = root * lambda;
    if (!(std::abs(t) < 1.0)) fail(ErrorCode::OutOfDomain, "lambda outside the open momentum interval");
    const double amp = p.normalization / std::sqrt((1.0 - t) * (1.0 + t));
    // (1 - t)^{i a} (1 + t)^{-i a} = exp(-2 i a artanh t)
    const double flat = std::atanh(t) / (form == ExponentForm::Scaled ? root : 1.0);
    return amp * std::exp(minus_i * p.xi * flat / p.hbar);
  }
  const double amp = p.normalization / std::sqrt(1.0 + p.beta * lambda * lambda);
  return amp * std::exp(minus_i * p.xi * (std::atan(root * lambda) / root) / p.hbar);
}

std::complex<double> flat_eigenfunction_value(const EigenfunctionParams& p, double u) {
  return p.normalization * std::exp(std::complex<double>(0.0, -1.0) * p.xi * u / p.hbar);
}

double eigen_ode_relative_residual(const EigenfunctionParams& p, double lambda, ExponentForm form, double h) {
  auto f = [&](double l) { return eigenfunction_value(p, l, form); };
  if (p.beta < 0.0) h = std::min(h, 0.05 * (1.0 / std::sqrt(-p.beta) - std::abs(lambda)));
  const std::complex<double> d = (f(lambda - 2 * h) - 8.0 * f(lambda - h) + 8.0 * f(lambda + h) - f(lambda + 2 * h)) /
                                 (12.0 * h);
  const std::complex<double> psi = f(lambda);
  const std::complex<double> lhs =
      std::complex<double>(0.0, p.hbar) * ((1.0 + p.beta * lambda * lambda) * d + p.beta * lambda * psi);
  return std::abs(lhs - p.xi * psi) / std::abs(p.xi * psi);
}

namespace {

using OdeState = std::array<double, 2>;

// psi' = k(lambda) psi with k = (-i xi / hbar - beta lambda) / (1 + beta lambda^2);
// `sign` = -1 integrates in mu = -lambda.
struct EigenOde {
  std::complex<double> xi;
  double beta;
  double hbar;
  double sign;

  void operator()(const OdeState& y, OdeState& dy, double mu) const {
    const double lambda = sign * mu;
    const std::complex<double> k =
        (std::complex<double>(0.0, -1.0) * xi / hbar - beta * lambda) / (1.0 + beta * lambda * lambda);
    const std::complex<double> d = sign * k * std::complex<double>(y[0], y[1]);
    dy[0] = d.real();
    dy[1] = d.imag();
  }
};

void integrate_branch(const EigenOde& ode, std::complex<double> initial, const std::vector<double>& mus,
                      std::vector<std::complex<double>>& out) {
  namespace odeint = boost::numeric::odeint;
  if (mus.empty()) return;
  std::vector<double> times;
  times.reserve(mus.size() + 1);
  times.push_back(0.0);
  times.insert(times.end(), mus.begin(), mus.end());
  OdeState y{initial.real(), initial.imag()};
  double last_reliable = 0.0;
  out.clear();
  auto observer = [&](const OdeState& state, double mu) {
    last_reliable = ode.sign * mu;
    out.emplace_back(state[0], state[1]);
  };
  auto stepper = odeint::make_controlled(1e-15, 1e-11, odeint::runge_kutta_fehlberg78<OdeState>());
  try {
    const double dt = std::max(1e-6, 1e-3 * (times.back() - times.front()));
    odeint::integrate_times(stepper, ode, y, times.begin(), times.end(), dt, observer,
                            odeint::max_step_checker(100000));
  } catch (const std::exception& e) {
    throw IntegrationFailure(last_reliable, std::string("eigenvalue ODE integration failed: ") + e.what());
  }
  for (const auto& v : out)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw IntegrationFailure(last_reliable, "eigenvalue ODE produced non-finite values");
  out.erase(out.begin());  // drop the starting point
}

}  // namespace

WaveFunction solve_eigen_ode(std::complex<double> xi, const ModelParams& params, const GridPtr& grid,
                             std::optional<std::complex<double>> initial) {
  if (params.beta() == 0.0) fail(ErrorCode::BetaZero, "eigenvalue ODE analysis needs beta != 0");
  const std::complex<double> psi0 = initial.value_or(kContinuumNormalization);
  const RVector lambda = grid->lambda_values();
  const Index n = grid->size();

  std::vector<Index> pos, neg;
  for (Index i = 0; i < n; ++i) (lambda(i) >= 0.0 ? pos : neg).push_back(i);
  std::sort(pos.begin(), pos.end(), [&](Index a, Index b) { return lambda(a) < lambda(b); });
  std::sort(neg.begin(), neg.end(), [&](Index a, Index b) { return lambda(a) > lambda(b); });

  WaveFunction wf{CVector::Zero(n), grid};
  std::vector<std::complex<double>> values;
  auto run = [&](const std::vector<Index>& idx, double sign) {
    std::vector<double> mus;
    std::vector<Index> kept;
    for (Index i : idx) {
      const double mu = sign * lambda(i);
      if (mu == 0.0) {
        wf.values(i) = psi0;
        continue;
      }
      if (!mus.empty() && mu <= mus.back()) fail(ErrorCode::InvalidArgument, "duplicate grid abscissae");
      mus.push_back(mu);
      kept.push_back(i);
    }
    integrate_branch(EigenOde{xi, params.beta(), params.hbar(), sign}, psi0, mus, values);
    for (std::size_t k = 0; k < kept.size(); ++k) wf.values(kept[k]) = values[k];
  };
  run(pos, 1.0);
  run(neg, -1.0);

  if (grid->coordinate() == Coordinate::U) wf.values = wf.values.cwiseProduct(grid->jacobian().cwiseSqrt().cast<std::complex<double>>());
  return wf;
}

namespace {

constexpr int kEpsDecades = 12;
constexpr std::size_t kFitPoints = 6;

// u-coordinate of the epsilon-shrunk edge.
double shrunk_edge(double beta, double eps) {
  const double root = std::sqrt(std::abs(beta));
  if (beta < 0.0) return 0.5 * std::log((2.0 - eps) / eps) / root;  // artanh(1 - eps)
  return (0.5 * kPi - std::atan(eps)) / root;                          // arctan(1 / eps)
}

double edge_integral(const EigenfunctionParams& p, double from, double to) {
  const double growth = 2.0 * std::abs(p.xi.imag()) / p.hbar;
  const Index panels = std::max<Index>(1, static_cast<Index>(std::ceil(std::abs(to - from) * std::max(1.0, growth))));
  const auto rule = quad::composite_gauss_legendre(panels, 16, from, to);
  double acc = 0.0;
  for (Index i = 0; i < rule.nodes.size(); ++i) acc += rule.weights(i) * std::norm(flat_eigenfunction_value(p, rule.nodes(i)));
  return acc;
}

EdgeRecord analyse_edge(const EigenfunctionParams& p, double side) {
  EdgeRecord rec;
  for (int k = 1; k <= kEpsDecades; ++k) {
    const double eps = std::pow(10.0, -k);
    const double edge = shrunk_edge(p.beta, eps);
    rec.eps.push_back(eps);
    rec.integrals.push_back(side > 0 ? edge_integral(p, 0.0, edge) : edge_integral(p, -edge, 0.0));
  }
  const std::size_t m = rec.eps.size();
  const std::size_t start = m - kFitPoints;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = start; i < m; ++i) {
    const double x = std::log(rec.eps[i]);
    const double y = std::log(rec.integrals[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double count = static_cast<double>(kFitPoints);
  rec.exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double intercept = (sy - rec.exponent * sx) / count;
  double ss = 0.0;
  for (std::size_t i = start; i < m; ++i) {
    const double r = std::log(rec.integrals[i]) - (intercept + rec.exponent * std::log(rec.eps[i]));
    ss += r * r;
  }
  rec.fit_residual = std::sqrt(ss / count);
  const double last = rec.integrals[m - 1];
  const double prev = rec.integrals[m - 2];
  rec.converged = std::abs(last - prev) <= kConvergedRelativeStep * std::abs(last);
  rec.divergent = !rec.converged && rec.exponent <= kDivergentExponent && rec.fit_residual < kMaxFitResidual;
  return rec;
}

DeficiencyProbe probe(const ModelParams& params, std::complex<double> xi) {
  const EigenfunctionParams ep(xi, params.beta(), std::nullopt, params.hbar());
  DeficiencyProbe pr;
  pr.xi = xi;
  pr.left = analyse_edge(ep, -1.0);
  pr.right = analyse_edge(ep, 1.0);
  for (const EdgeRecord* e : {&pr.left, &pr.right})
    if (!e->converged && !e->divergent)
      fail(ErrorCode::InconclusiveFit, "edge integral neither converges nor diverges cleanly (exponent " +
                                           std::to_string(e->exponent) + ", residual " +
                                           std::to_string(e->fit_residual) + ")");
  pr.normalizable = pr.left.converged && pr.right.converged;
  return pr;
}

}  // namespace

DeficiencyReport deficiency_indices(const ModelParams& params) {
  if (params.beta() == 0.0) fail(ErrorCode::BetaZero, "deficiency analysis needs beta != 0");
  const double kappa = params.hbar() * std::max(1.0, params.sqrt_abs_beta());
  DeficiencyReport report;
  report.plus = probe(params, {0.0, kappa});
  report.minus = probe(params, {0.0, -kappa});
  report.n_plus = report.plus.normalizable ? 1 : 0;
  report.n_minus = report.minus.normalizable ? 1 : 0;
  report.boundary_exponent_plus = std::min(report.plus.left.exponent, report.plus.right.exponent);
  report.boundary_exponent_minus = std::min(report.minus.left.exponent, report.minus.right.exponent);
  return report;
}

RVector trapezoid_weights(std::span<const double> x) {
  const Index n = static_cast<Index>(x.size());
  RVector w = RVector::Zero(n);
  for (Index i = 0; i + 1 < n; ++i) {
    const double h = x[i + 1] - x[i];
    if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "xi-grid must be strictly ascending");
    w(i) += 0.5 * h;
    w(i + 1) += 0.5 * h;
  }
  return w;
}

std::vector<double> uniform_xi_grid(double half_width, double spacing) {
  if (!(half_width > 0.0) || !(spacing > 0.0)) fail(ErrorCode::InvalidArgument, "xi-grid needs positive extent");
  const auto steps = static_cast<long>(std::llround(half_width / spacing));
  std::vector<double> xi;
  xi.reserve(static_cast<std::size_t>(2 * steps + 1));
  for (long k = -steps; k <= steps; ++k) xi.push_back(static_cast<double>(k) * spacing);
  return xi;
}

namespace {

// Amplitude N (dlambda/du)^{-1/2} (lambda-grids) or N (u-grids) and u at each node.
void kernel_geometry(const Grid& grid, double normalization, RVector& amp, RVector& u) {
  const FlatMap map(grid.beta());
  amp.resize(grid.size());
  u.resize(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    const double x = grid.nodes()(i);
    if (grid.coordinate() == Coordinate::U) {
      u(i) = x;
      amp(i) = normalization;
    } else {
      u(i) = map.u_of_lambda(x);
      amp(i) = normalization / std::sqrt(map.jacobian_at_u(u(i)));
    }
  }
}

void require_bounded_momentum(const ModelParams& params, const Grid& grid) {
  if (params.beta() >= 0.0)
    fail(ErrorCode::WrongRegime, "the generalized Fourier transform is defined here for beta < 0 only");
  if (grid.beta() != params.beta()) fail(ErrorCode::GridMismatch, "grid was built for a different beta");
  if (grid.full_line()) fail(ErrorCode::InvalidArgument, "momentum grid must lie in the bounded interval");
}

}  // namespace

PositionWaveFunction fourier_forward(const WaveFunction& psi, std::span<const double> xi, const ModelParams& params) {
  require_bounded_momentum(params, *psi.grid);
  const double n_norm = default_normalization(params.beta(), params.hbar());
  RVector amp, u;
  kernel_geometry(*psi.grid, n_norm, amp, u);
  const RVector& w = psi.grid->weights();
  PositionWaveFunction out;
  out.xi = Eigen::Map<const RVector>(xi.data(), static_cast<Index>(xi.size()));
  out.weights = trapezoid_weights(xi);
  out.values.resize(out.xi.size());
  for (Index j = 0; j < out.xi.size(); ++j) {
    std::complex<double> acc = 0.0;
    for (Index i = 0; i < u.size(); ++i)
      acc += w(i) * amp(i) * std::polar(1.0, out.xi(j) * u(i) / params.hbar()) * psi.values(i);
    out.values(j) = acc;
  }
  return out;
}

WaveFunction fourier_inverse(const PositionWaveFunction& psi, const GridPtr& grid, const ModelParams& params) {
  require_bounded_momentum(params, *grid);
  const double n_norm = default_normalization(params.beta(), params.hbar());
  RVector amp, u;
  kernel_geometry(*grid, n_norm, amp, u);
  WaveFunction out{CVector(grid->size()), grid};
  for (Index i = 0; i < grid->size(); ++i) {
    std::complex<double> acc = 0.0;
    for (Index j = 0; j < psi.xi.size(); ++j)
      acc += psi.weights(j) * std::polar(1.0, -psi.xi(j) * u(i) / params.hbar()) * psi.values(j);
    out.values(i) = amp(i) * acc;
  }
  return out;
}

OrthoCompleteness verify_orthocompleteness(const ModelParams& params, const GridPtr& grid, std::span<const double> xi,
                                           const OrthoCompletenessOptions& options) {
  require_bounded_momentum(params, *grid);
  const double hbar = params.hbar();
  const double n_norm = options.normalization.value_or(default_normalization(params.beta(), hbar));
  RVector amp, u;
  kernel_geometry(*grid, n_norm, amp, u);

  // Phi_a = int dxi m(xi - xi_a) psi_xi with a unit-mass Gaussian m of width
  // sigma; <Phi_a|Phi_b> = (m * m)(xi_a - xi_b), whose peak 1/(2 sigma sqrt(pi))
  // calibrates the delta normalization.
  const auto& centres = options.mollifier_centres;
  const double sigma = options.mollifier_width;
  const Index m = static_cast<Index>(centres.size());
  CMatrix phi(grid->size(), m);
  for (Index a = 0; a < m; ++a)
    for (Index i = 0; i < grid->size(); ++i)
      phi(i, a) = amp(i) * std::polar(std::exp(-0.5 * sigma * sigma * u(i) * u(i) / (hbar * hbar)),
                                      -centres[static_cast<std::size_t>(a)] * u(i) / hbar);
  const CMatrix gram = phi.adjoint() * grid->weights().asDiagonal() * phi;
  const double calibration = 2.0 * sigma * std::sqrt(kPi);
  OrthoCompleteness result;
  result.ortho_residual = (calibration * gram - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff();

  std::vector<WaveFunction> states = options.test_states;
  if (states.empty()) states = sample_domain_states(StateFamily{20231, 10}, grid);
  result.state_errors.resize(states.size());
  std::vector<double> isometry(states.size());
  parallel_for(states.size(), [&](std::size_t k) {
    const WaveFunction& psi = states[k];
    const PositionWaveFunction f = fourier_forward(psi, xi, params);
    const WaveFunction back = fourier_inverse(f, grid, params);
    const double psi_norm = norm(psi);
    result.state_errors[k] = norm(WaveFunction{back.values - psi.values, grid}) / psi_norm;
    const double f_norm = std::sqrt((f.weights.array() * f.values.array().abs2()).sum());
    isometry[k] = std::abs(f_norm - psi_norm) / psi_norm;
  });
  for (std::size_t k = 0; k < states.size(); ++k) {
    result.compl_residual = std::max(result.compl_residual, result.state_errors[k]);
    result.isometry_defect = std::max(result.isometry_defect, isometry[k]);
    if (result.state_errors[k] > options.tolerance || isometry[k] > options.tolerance) result.degraded = true;
  }
  return result;
}

FiniteRep finite_dim_rep(const ModelParams& params, std::span<const int> signs, std::span<const double> positions) {
  if (params.beta() >= 0.0)
    fail(ErrorCode::WrongRegime, "finite-dimensional representations exist only for beta < 0");
  if (signs.size() != positions.size() || signs.empty())
    fail(ErrorCode::InvalidArgument, "signs and positions must be non-empty and of equal length");
  FiniteRep rep;
  rep.dim = static_cast<Index>(signs.size());
  rep.momentum_signs.assign(signs.begin(), signs.end());
  rep.positions.assign(positions.begin(), positions.end());
  rep.X = CMatrix::Zero(rep.dim, rep.dim);
  rep.P = CMatrix::Zero(rep.dim, rep.dim);
  const double edge = params.momentum_edge();
  for (Index i = 0; i < rep.dim; ++i) {
    const int s = signs[static_cast<std::size_t>(i)];
    if (s != 1 && s != -1) fail(ErrorCode::InvalidArgument, "momentum signs must be +1 or -1");
    if (!std::isfinite(positions[static_cast<std::size_t>(i)]))
      fail(ErrorCode::InvalidArgument, "positions must be finite");
    rep.X(i, i) = positions[static_cast<std::size_t>(i)];
    rep.P(i, i) = s * edge;
  }
  return rep;
}

CcrSides finite_rep_ccr_sides(const FiniteRep& rep, const ModelParams& params) {
  CcrSides sides;
  sides.commutator = rep.X * rep.P - rep.P * rep.X;
  sides.rhs = std::complex<double>(0.0, params.hbar()) *
              (CMatrix::Identity(rep.dim, rep.dim) + params.beta() * rep.P * rep.P);
  return sides;
}

}  // namespace dqm
