#include "dqm/momspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dqm/errors.hpp"
#include "dqm/quadrature.hpp"

namespace dqm {

FlatMap::FlatMap(double beta) : beta_(beta), root_(std::sqrt(std::abs(beta))) {
  if (beta == 0.0) fail(ErrorCode::BetaZero, "flattening coordinate needs beta != 0");
  if (!std::isfinite(beta)) fail(ErrorCode::InvalidArgument, "beta must be finite");
}

double FlatMap::u_of_lambda(double lambda) const {
  if (beta_ < 0.0) {
    const double t = root_ * lambda;
    if (std::abs(t) >= 1.0) fail(ErrorCode::OutOfDomain, "lambda outside the bounded momentum interval");
    return std::atanh(t) / root_;
  }
  return std::atan(root_ * lambda) / root_;
}

double FlatMap::lambda_of_u(double u) const {
  if (beta_ < 0.0) return std::tanh(root_ * u) / root_;
  const double edge = 0.5 * kPi / root_;
  if (std::abs(u) >= edge) fail(ErrorCode::OutOfDomain, "u outside the finite flattened interval");
  return std::tan(root_ * u) / root_;
}

double FlatMap::jacobian_at_u(double u) const {
  if (beta_ < 0.0) {
    const double c = std::cosh(root_ * u);
    return 1.0 / (c * c);
  }
  const double c = std::cos(root_ * u);
  return 1.0 / (c * c);
}

std::pair<double, double> FlatMap::u_range() const {
  if (beta_ < 0.0) return {-HUGE_VAL, HUGE_VAL};
  const double edge = 0.5 * kPi / root_;
  return {-edge, edge};
}

FlatMap flat_coordinate_map(double beta) { return FlatMap(beta); }

Grid::Grid(Coordinate coordinate, Scheme scheme, double beta, double lo, double hi, RVector nodes, RVector weights,
           bool full_line)
    : coordinate_(coordinate),
      scheme_(scheme),
      beta_(beta),
      lo_(lo),
      hi_(hi),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      full_line_(full_line) {
  const Index n = nodes_.size();
  if (n < 2 || weights_.size() != n) fail(ErrorCode::InvalidArgument, "grid needs matching nodes and weights");
  if (!(hi_ > lo_)) fail(ErrorCode::InvalidArgument, "grid interval is empty");
  for (Index i = 0; i < n; ++i) {
    if (!(nodes_(i) > lo_ && nodes_(i) < hi_)) fail(ErrorCode::InvalidArgument, "grid nodes must lie strictly inside");
    if (i > 0 && !(nodes_(i) > nodes_(i - 1))) fail(ErrorCode::InvalidArgument, "grid nodes must ascend");
    if (!(weights_(i) > 0.0)) fail(ErrorCode::InvalidArgument, "grid weights must be positive");
  }
  if (std::abs(weights_.sum() - length()) > 1e-10 * std::max(1.0, length()))
    fail(ErrorCode::InvalidArgument, "grid weights must sum to the interval length");
  if (coordinate_ == Coordinate::Lambda && beta_ < 0.0 && !full_line_) {
    const double edge = 1.0 / std::sqrt(-beta_);
    if (lo_ < -edge || hi_ > edge)
      fail(ErrorCode::BadTruncation, "bounded-momentum lambda-grid must lie within the momentum interval");
  }
  if (coordinate_ == Coordinate::U && beta_ > 0.0) {
    const double edge = 0.5 * kPi / std::sqrt(beta_);
    if (lo_ < -edge || hi_ > edge) fail(ErrorCode::BadTruncation, "u-grid exceeds the flattened interval");
  }

  if (scheme_ == Scheme::GaussLegendre) {
    const double half = 0.5 * length();
    const double mid = 0.5 * (hi_ + lo_);
    const RVector t = ((nodes_.array() - mid) / half).matrix();
    const RVector w01 = weights_ / half;
    bary_ = quad::gauss_legendre_barycentric(t, w01);
    diff_ = quad::barycentric_differentiation(nodes_, bary_);
  } else {
    diff_ = quad::central_difference_4(n, nodes_(1) - nodes_(0));
  }
}

RVector Grid::lambda_values() const {
  if (coordinate_ == Coordinate::Lambda) return nodes_;
  const FlatMap map(beta_);
  RVector out(size());
  for (Index i = 0; i < size(); ++i) out(i) = map.lambda_of_u(nodes_(i));
  return out;
}

RVector Grid::jacobian() const {
  if (coordinate_ == Coordinate::Lambda) return RVector::Ones(size());
  const FlatMap map(beta_);
  RVector out(size());
  for (Index i = 0; i < size(); ++i) out(i) = map.jacobian_at_u(nodes_(i));
  return out;
}

bool Grid::same_as(const Grid& other) const noexcept {
  return coordinate_ == other.coordinate_ && scheme_ == other.scheme_ && beta_ == other.beta_ && lo_ == other.lo_ &&
         hi_ == other.hi_ && full_line_ == other.full_line_ && nodes_.size() == other.nodes_.size() &&
         nodes_ == other.nodes_ && weights_ == other.weights_;
}

namespace {

GridPtr make_grid(Coordinate coordinate, Scheme scheme, double beta, double lo, double hi, Index n, bool full_line) {
  RVector nodes, weights;
  if (scheme == Scheme::GaussLegendre) {
    auto rule = quad::gauss_legendre(n, lo, hi);
    nodes = std::move(rule.nodes);
    weights = std::move(rule.weights);
  } else {
    const double h = (hi - lo) / static_cast<double>(n);
    nodes.resize(n);
    for (Index i = 0; i < n; ++i) nodes(i) = lo + (static_cast<double>(i) + 0.5) * h;
    weights = RVector::Constant(n, h);
  }
  return std::make_shared<const Grid>(coordinate, scheme, beta, lo, hi, std::move(nodes), std::move(weights),
                                      full_line);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorCode::BadTruncation, std::string(what) + " must be positive");
}

}  // namespace

GridPtr build_grid(const ModelParams& params, Index n, Coordinate coordinate, Scheme scheme,
                   std::optional<double> truncation) {
  if (n < 8) fail(ErrorCode::GridTooSmall, "grids need at least 8 nodes");
  const double beta = params.beta();
  const double root = params.sqrt_abs_beta();
  double half = 0.0;
  if (coordinate == Coordinate::Lambda) {
    if (beta < 0.0) {
      const double eps = truncation.value_or(kDefaultEdgeShrink);
      if (!(eps > 0.0 && eps < 1.0)) fail(ErrorCode::BadTruncation, "edge shrink must lie in (0, 1)");
      half = (1.0 - eps) / root;
    } else {
      half = truncation.value_or(beta > 0.0 ? 100.0 / root : 10.0);
      require_positive(half, "momentum cutoff");
    }
  } else {
    if (beta == 0.0) fail(ErrorCode::BetaZero, "u-coordinates need beta != 0");
    if (beta < 0.0) {
      half = truncation.value_or(12.0 / root);
      require_positive(half, "u half-width");
    } else {
      const double eps = truncation.value_or(kDefaultEdgeShrink);
      if (!(eps >= 0.0 && eps < 1.0)) fail(ErrorCode::BadTruncation, "edge shrink must lie in [0, 1)");
      half = (1.0 - eps) * 0.5 * kPi / root;
    }
  }
  return make_grid(coordinate, scheme, beta, -half, half, n, false);
}

GridPtr build_full_line_grid(const ModelParams& params, Index n, double half_width) {
  if (params.beta() >= 0.0) fail(ErrorCode::WrongRegime, "full-line grids are for beta < 0");
  if (n < 8) fail(ErrorCode::GridTooSmall, "grids need at least 8 nodes");
  if (!(half_width > params.momentum_edge()))
    fail(ErrorCode::IntervalTooSmall, "full-line grid must extend past the momentum edges");
  return make_grid(Coordinate::Lambda, Scheme::GaussLegendre, params.beta(), -half_width, half_width, n, true);
}

WaveFunction sample_state(const GridPtr& grid, const std::function<std::complex<double>(double)>& psi_of_lambda) {
  const RVector lambda = grid->lambda_values();
  const RVector jac = grid->jacobian();
  WaveFunction wf{CVector(grid->size()), grid};
  for (Index i = 0; i < grid->size(); ++i) wf.values(i) = std::sqrt(jac(i)) * psi_of_lambda(lambda(i));
  return wf;
}

WaveFunction sample_in_grid_coordinate(const GridPtr& grid, const std::function<std::complex<double>(double)>& f) {
  WaveFunction wf{CVector(grid->size()), grid};
  for (Index i = 0; i < grid->size(); ++i) wf.values(i) = f(grid->nodes()(i));
  return wf;
}

void require_same_grid(const GridPtr& a, const GridPtr& b) {
  if (!a || !b) fail(ErrorCode::GridMismatch, "missing grid");
  if (a != b && !a->same_as(*b)) fail(ErrorCode::GridMismatch, "objects live on different grids");
}

DiscretizedOperator momentum_operator(const GridPtr& grid) {
  const RVector lambda = grid->lambda_values();
  DiscretizedOperator op{CMatrix(lambda.cast<std::complex<double>>().asDiagonal()), grid, true};
  return op;
}

DiscretizedOperator hermitianize(DiscretizedOperator op) {
  const RVector& w = op.grid->weights();
  const CMatrix weighted_adjoint = w.cwiseInverse().asDiagonal() * op.matrix.adjoint() * w.asDiagonal();
  op.matrix = 0.5 * (op.matrix + weighted_adjoint);
  op.hermitianized = true;
  return op;
}

double hermiticity_residual(const DiscretizedOperator& op) {
  const CMatrix m = op.grid->weights().asDiagonal() * op.matrix;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

DiscretizedOperator position_operator(const GridPtr& grid, const ModelParams& params) {
  if (grid->size() < 16) fail(ErrorCode::GridTooSmall, "position operator needs at least 16 nodes");
  if (grid->beta() != params.beta()) fail(ErrorCode::GridMismatch, "grid was built for a different beta");
  const std::complex<double> ih(0.0, params.hbar());
  const RMatrix& d = grid->differentiation();
  CMatrix x;
  if (grid->coordinate() == Coordinate::U) {
    x = ih * d.cast<std::complex<double>>();
  } else {
    const RVector& lambda = grid->nodes();
    const double beta = params.beta();
    const RVector coeff = (1.0 + beta * lambda.array().square()).matrix();
    RMatrix real_part = coeff.asDiagonal() * d;
    real_part.diagonal() += beta * lambda;
    x = ih * real_part.cast<std::complex<double>>();
  }
  return hermitianize(DiscretizedOperator{std::move(x), grid, false});
}

std::complex<double> inner_product(const WaveFunction& f, const WaveFunction& g) {
  require_same_grid(f.grid, g.grid);
  const RVector& w = f.grid->weights();
  std::complex<double> acc = 0.0;
  for (Index i = 0; i < w.size(); ++i) acc += w(i) * std::conj(f.values(i)) * g.values(i);
  return acc;
}

double norm(const WaveFunction& f) { return std::sqrt(std::max(0.0, inner_product(f, f).real())); }

WaveFunction normalized(WaveFunction f) {
  const double n = norm(f);
  if (!(n > 0.0)) fail(ErrorCode::InvalidArgument, "cannot normalize a zero state");
  f.values /= n;
  return f;
}

std::vector<CVector> interior_test_states(const Grid& grid, int count, double relative_width) {
  std::vector<CVector> states;
  const double sigma = relative_width * grid.length();
  for (int k = 0; k < count; ++k) {
    const double centre = grid.lo() + (k + 1) * grid.length() / (count + 1);
    CVector v(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
      const double z = (grid.nodes()(i) - centre) / sigma;
      v(i) = std::exp(-0.5 * z * z);
    }
    states.push_back(std::move(v));
  }
  return states;
}

double ccr_residual(const DiscretizedOperator& X, const DiscretizedOperator& P, const ModelParams& params,
                    Index interior_margin, const std::vector<CVector>& states) {
  require_same_grid(X.grid, P.grid);
  if (interior_margin < 2) fail(ErrorCode::InvalidArgument, "interior margin must be at least 2");
  const Index n = X.grid->size();
  if (2 * interior_margin >= n) fail(ErrorCode::InvalidArgument, "interior margin leaves no rows");
  const auto& family = states.empty() ? interior_test_states(*X.grid) : states;
  const std::complex<double> ih(0.0, params.hbar());
  double worst = 0.0;
  for (const CVector& psi : family) {
    if (psi.size() != n) fail(ErrorCode::GridMismatch, "test state size differs from grid");
    const CVector p_psi = P.apply(psi);
    const CVector lhs = X.apply(p_psi) - P.apply(X.apply(psi));
    const CVector rhs = ih * (psi + params.beta() * P.apply(p_psi));
    const Index rows = n - 2 * interior_margin;
    const double scale = std::max(1.0, rhs.segment(interior_margin, rows).cwiseAbs().maxCoeff());
    const double r = (lhs - rhs).segment(interior_margin, rows).cwiseAbs().maxCoeff() / scale;
    worst = std::max(worst, r);
  }
  return worst;
}

DiscretizedOperator commutant_step_operator(std::complex<double> a_amp, std::complex<double> b_amp,
                                            const GridPtr& grid, const ModelParams& params) {
  if (params.beta() >= 0.0) fail(ErrorCode::WrongRegime, "commutant step operators need beta < 0");
  if (grid->coordinate() != Coordinate::Lambda) fail(ErrorCode::InvalidArgument, "step operators live on lambda-grids");
  const double edge = params.momentum_edge();
  if (!(grid->lo() < -edge && grid->hi() > edge))
    fail(ErrorCode::IntervalTooSmall, "grid must strictly contain the bounded momentum interval");
  CVector diag(grid->size());
  for (Index i = 0; i < grid->size(); ++i) {
    const double lambda = grid->nodes()(i);
    diag(i) = (lambda > edge ? a_amp : 0.0) + (lambda > -edge ? b_amp : 0.0);
  }
  return DiscretizedOperator{CMatrix(diag.asDiagonal()), grid, false};
}

double commutator_norm(const DiscretizedOperator& A, const DiscretizedOperator& B, const WaveFunction& psi) {
  require_same_grid(A.grid, B.grid);
  require_same_grid(A.grid, psi.grid);
  WaveFunction r{A.apply(B.apply(psi.values)) - B.apply(A.apply(psi.values)), psi.grid};
  return norm(r);
}

}  // namespace dqm
