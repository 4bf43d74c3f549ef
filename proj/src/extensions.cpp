#include "dqm/extensions.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "dqm/eigenstructure.hpp"
#include "dqm/errors.hpp"
#include "dqm/quadrature.hpp"

namespace dqm {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

void require_minimal_length(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) fail(ErrorCode::WrongRegime, "this construction needs beta > 0");
}

double flattened_length(double beta) { return kPi / std::sqrt(beta); }

}  // namespace

ExtensionLabel::ExtensionLabel(double s) {
  if (!std::isfinite(s)) fail(ErrorCode::InvalidArgument, "extension phase must be finite");
  double r = std::fmod(s, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  s_ = r;
}

double SpectrumLattice::spacing() const {
  if (values.size() < 2) return 0.0;
  return values[1] - values[0];
}

double eigenvector_overlap(double xi, double xi_prime, double beta) {
  require_minimal_length(beta);
  const double root = std::sqrt(beta);
  const double t = (xi - xi_prime) / (2.0 * root);
  const double x = t * kPi;
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
  // sin(pi t) with exact zeros at the integers
  const double r = std::remainder(t, 2.0);
  if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
  return std::sin(r * kPi) / x;
}

double eigenvector_overlap_quadrature(double xi, double xi_prime, double beta, Index nodes) {
  require_minimal_length(beta);
  const double edge = 0.5 * flattened_length(beta);
  const auto rule = quad::gauss_legendre(nodes, -edge, edge);
  const EigenfunctionParams a(xi, beta);
  const EigenfunctionParams b(xi_prime, beta);
  std::complex<double> acc = 0.0;
  for (Index i = 0; i < nodes; ++i)
    acc += rule.weights(i) * std::conj(flat_eigenfunction_value(a, rule.nodes(i))) *
           flat_eigenfunction_value(b, rule.nodes(i));
  return acc.real();
}

SpectrumLattice extension_spectrum(const ExtensionLabel& label, double beta, int r_min, int r_max, double hbar) {
  require_minimal_length(beta);
  if (r_max < r_min) fail(ErrorCode::InvalidArgument, "empty lattice index range");
  SpectrumLattice lat;
  lat.beta = beta;
  lat.s = label.s();
  lat.r_min = r_min;
  lat.r_max = r_max;
  const double root = std::sqrt(beta);
  for (int r = r_min; r <= r_max; ++r) lat.values.push_back(hbar * (2.0 * r + label.s() / kPi) * root);
  return lat;
}

ExtensionLabel local_group_action(const ExtensionLabel& label, double sigma) {
  return ExtensionLabel(label.s() + sigma);
}

Orbit eigenvalue_orbit(int r, double beta, int samples) {
  require_minimal_length(beta);
  if (samples < 2) fail(ErrorCode::InvalidArgument, "an orbit needs at least two samples");
  Orbit orbit;
  orbit.r = r;
  orbit.beta = beta;
  for (int k = 0; k < samples; ++k) {
    const ExtensionLabel label(kTwoPi * k / samples);
    orbit.s_samples.push_back(label.s());
    orbit.sweep.push_back(extension_spectrum(label, beta, r, r).values.front());
  }
  const double root = std::sqrt(beta);
  orbit.lower = 2.0 * r * root;
  orbit.upper = (2.0 * r + 2.0) * root;
  orbit.half_width = 0.5 * (orbit.upper - orbit.lower);
  return orbit;
}

GridPtr build_extension_grid(const ModelParams& params, Index n) {
  require_minimal_length(params.beta());
  return build_grid(params, n, Coordinate::U, Scheme::Uniform, 0.0);
}

DiscretizedOperator extension_position_operator(const ExtensionLabel& label, const ModelParams& params,
                                                const GridPtr& grid) {
  require_minimal_length(params.beta());
  const double length = flattened_length(params.beta());
  if (grid->coordinate() != Coordinate::U || grid->scheme() != Scheme::Uniform ||
      std::abs(grid->length() - length) > 1e-12 * length || grid->beta() != params.beta())
    fail(ErrorCode::GridMismatch, "extension operators need a full uniform u-grid for the same beta");
  const Index n = grid->size();
  const double h = grid->nodes()(1) - grid->nodes()(0);
  // X_{lj} = (hbar / n) sum_m k_m exp(-i k_m (u_l - u_j)), k_m = (s + 2 pi m) / length,
  // m = -n/2 .. n - 1 - n/2; depends only on l - j.
  std::vector<std::complex<double>> by_offset(static_cast<std::size_t>(2 * n - 1));
  const Index m_lo = -n / 2;
  for (Index d = -(n - 1); d <= n - 1; ++d) {
    std::complex<double> acc = 0.0;
    for (Index m = m_lo; m < m_lo + n; ++m) {
      const double k = (label.s() + kTwoPi * static_cast<double>(m)) / length;
      acc += k * std::polar(1.0, -k * h * static_cast<double>(d));
    }
    by_offset[static_cast<std::size_t>(d + n - 1)] = params.hbar() * acc / static_cast<double>(n);
  }
  CMatrix x(n, n);
  for (Index l = 0; l < n; ++l)
    for (Index j = 0; j < n; ++j) x(l, j) = by_offset[static_cast<std::size_t>(l - j + n - 1)];
  return DiscretizedOperator{std::move(x), grid, true};
}

ExtensionEigen extension_diagonalize(const ExtensionLabel& label, const ModelParams& params, Index n) {
  require_minimal_length(params.beta());
  if (n < 16) fail(ErrorCode::GridTooSmall, "extension diagonalization needs at least 16 nodes");
  const GridPtr grid = build_extension_grid(params, n);
  const DiscretizedOperator x = extension_position_operator(label, params, grid);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix);
  if (solver.info() != Eigen::Success) fail(ErrorCode::InvalidArgument, "eigensolver did not converge");
  ExtensionEigen eig;
  eig.grid = grid;
  eig.eigenvalues = solver.eigenvalues();
  const double h = grid->weights()(0);
  eig.eigenvectors = solver.eigenvectors() / std::sqrt(h);
  const double unit = params.hbar() * std::sqrt(params.beta());
  for (Index k = 0; k < n; ++k)
    eig.lattice_index.push_back(static_cast<int>(std::lround(0.5 * (eig.eigenvalues(k) / unit - label.s() / kPi))));
  return eig;
}

CVector pull_back_to_lambda(const ExtensionEigen& eig, Index k) {
  return eig.eigenvectors.col(k).cwiseQuotient(eig.grid->jacobian().cwiseSqrt().cast<std::complex<double>>());
}

RMatrix overlap_gram(std::span<const double> xi, double beta) {
  const Index m = static_cast<Index>(xi.size());
  RMatrix g(m, m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) g(a, b) = eigenvector_overlap(xi[a], xi[b], beta);
  return g;
}

RMatrix overlap_gram_quadrature(std::span<const double> xi, double beta, Index nodes) {
  const Index m = static_cast<Index>(xi.size());
  RMatrix g(m, m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) g(a, b) = eigenvector_overlap_quadrature(xi[a], xi[b], beta, nodes);
  return g;
}

RMatrix lattice_gram(const ExtensionLabel& label, double beta, Index m) {
  require_minimal_length(beta);
  if (m < 1) fail(ErrorCode::InvalidArgument, "lattice Gram matrix needs at least one point");
  const auto lattice = extension_spectrum(label, beta, 0, static_cast<int>(m) - 1);
  return overlap_gram(lattice.values, beta);
}

MinimalUncertainty minimal_uncertainty_search(const ModelParams& params, Index n) {
  require_minimal_length(params.beta());
  if (n < 128) fail(ErrorCode::GridTooSmall, "variational search needs at least 128 nodes");
  // Even Legendre-Dirichlet functions phi_k = c_k (L_k - L_{k+2}), c_k = (4k+6)^{-1/2},
  // k = 0, 2, 4, ... <= n - 3. Their stiffness matrix on [-1, 1] is the identity,
  // so the smallest Rayleigh quotient is 1 / (largest mass eigenvalue).
  std::vector<Index> modes;
  for (Index k = 0; k <= n - 3; k += 2) modes.push_back(k);
  const Index m = static_cast<Index>(modes.size());
  auto c = [](Index k) { return 1.0 / std::sqrt(4.0 * k + 6.0); };
  RMatrix mass = RMatrix::Zero(m, m);
  for (Index a = 0; a < m; ++a) {
    const Index k = modes[a];
    mass(a, a) = c(k) * c(k) * (2.0 / (2.0 * k + 1.0) + 2.0 / (2.0 * k + 5.0));
    if (a + 1 < m) {
      const double off = -c(k) * c(k + 2) * 2.0 / (2.0 * k + 5.0);
      mass(a, a + 1) = off;
      mass(a + 1, a) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(mass);
  if (solver.info() != Eigen::Success) fail(ErrorCode::InvalidArgument, "mass eigensolver did not converge");
  const double nu = solver.eigenvalues()(m - 1);
  const RVector coeffs = solver.eigenvectors().col(m - 1);

  const double length = flattened_length(params.beta());
  const double rayleigh_u = (1.0 / nu) * (2.0 / length) * (2.0 / length);
  MinimalUncertainty result;
  result.dx_min = params.hbar() * std::sqrt(rayleigh_u);

  const GridPtr grid = build_grid(params, n, Coordinate::U, Scheme::GaussLegendre, 0.0);
  WaveFunction wf{CVector::Zero(n), grid};
  for (Index j = 0; j < n; ++j) {
    const double t = grid->nodes()(j) * 2.0 / length;
    const RVector leg = quad::legendre_values(n - 1, t);
    double v = 0.0;
    for (Index a = 0; a < m; ++a) {
      const Index k = modes[a];
      v += coeffs(a) * c(k) * (leg(k) - leg(k + 2));
    }
    wf.values(j) = v;
  }
  if (wf.values.real().sum() < 0.0) wf.values = -wf.values;
  result.minimizer = normalized(std::move(wf));
  return result;
}

double dirichlet_oracle_eigenvalue(double beta, Index n) {
  require_minimal_length(beta);
  if (n < 4) fail(ErrorCode::InvalidArgument, "Chebyshev oracle needs order >= 4");
  // Chebyshev points x_j = cos(pi j / n) and the standard collocation derivative.
  RVector x(n + 1), cw(n + 1);
  for (Index j = 0; j <= n; ++j) {
    x(j) = std::cos(kPi * j / n);
    cw(j) = ((j == 0 || j == n) ? 2.0 : 1.0) * ((j % 2 == 0) ? 1.0 : -1.0);
  }
  RMatrix d = RMatrix::Zero(n + 1, n + 1);
  for (Index i = 0; i <= n; ++i) {
    for (Index j = 0; j <= n; ++j)
      if (i != j) d(i, j) = (cw(i) / cw(j)) / (x(i) - x(j));
    d(i, i) = -d.row(i).sum();
  }
  const RMatrix d2 = (d * d).block(1, 1, n - 1, n - 1);
  Eigen::EigenSolver<RMatrix> solver(-d2);
  double smallest = HUGE_VAL;
  for (Index k = 0; k < n - 1; ++k) {
    const auto ev = solver.eigenvalues()(k);
    if (std::abs(ev.imag()) < 1e-8 && ev.real() > 0.0) smallest = std::min(smallest, ev.real());
  }
  const double length = flattened_length(beta);
  return smallest * (2.0 / length) * (2.0 / length);
}

}  // namespace dqm
