#include "dqm/quadrature.hpp"

#include <cmath>

#include "dqm/errors.hpp"

namespace dqm::quad {

namespace {

// Returns P_n(x) and P_n'(x).
std::pair<double, double> legendre_with_derivative(Index n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (Index k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

Rule gauss_legendre(Index n, double lo, double hi) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "quadrature needs at least one node");
  RVector x(n), w(n);
  for (Index i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton.
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(n, z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const auto [p, dp] = legendre_with_derivative(n, z);
    (void)p;
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    x(i) = -z;
    x(n - 1 - i) = z;
    w(i) = weight;
    w(n - 1 - i) = weight;
  }
  if (n % 2 == 1) x(n / 2) = 0.0;
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  Rule rule;
  rule.nodes = (mid + half * x.array()).matrix();
  rule.weights = half * w;
  return rule;
}

Rule composite_gauss_legendre(Index panels, Index order, double lo, double hi) {
  if (panels < 1) fail(ErrorCode::InvalidArgument, "need at least one panel");
  const Rule base = gauss_legendre(order);
  Rule rule;
  rule.nodes.resize(panels * order);
  rule.weights.resize(panels * order);
  const double width = (hi - lo) / static_cast<double>(panels);
  for (Index p = 0; p < panels; ++p) {
    const double a = lo + width * p;
    for (Index k = 0; k < order; ++k) {
      rule.nodes(p * order + k) = a + 0.5 * width * (base.nodes(k) + 1.0);
      rule.weights(p * order + k) = 0.5 * width * base.weights(k);
    }
  }
  return rule;
}

RVector gauss_legendre_barycentric(const RVector& nodes01, const RVector& weights01) {
  const Index n = nodes01.size();
  RVector bary(n);
  for (Index j = 0; j < n; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    bary(j) = sign * std::sqrt((1.0 - nodes01(j) * nodes01(j)) * weights01(j));
  }
  return bary;
}

RMatrix barycentric_differentiation(const RVector& nodes, const RVector& bary) {
  const Index n = nodes.size();
  RMatrix d = RMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    double diag = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      d(i, j) = (bary(j) / bary(i)) / (nodes(i) - nodes(j));
      diag -= d(i, j);
    }
    d(i, i) = diag;
  }
  return d;
}

CVector barycentric_interpolate(const RVector& nodes, const RVector& bary, const CVector& values,
                                std::span<const double> points) {
  const Index n = nodes.size();
  CVector out(static_cast<Index>(points.size()));
  for (Index k = 0; k < out.size(); ++k) {
    const double x = points[static_cast<std::size_t>(k)];
    std::complex<double> num = 0.0;
    double den = 0.0;
    Index exact = -1;
    for (Index j = 0; j < n; ++j) {
      const double diff = x - nodes(j);
      if (diff == 0.0) {
        exact = j;
        break;
      }
      const double t = bary(j) / diff;
      num += t * values(j);
      den += t;
    }
    out(k) = exact >= 0 ? values(exact) : num / den;
  }
  return out;
}

RMatrix central_difference_4(Index n, double h) {
  RMatrix d = RMatrix::Zero(n, n);
  const double c1 = 8.0 / (12.0 * h);
  const double c2 = 1.0 / (12.0 * h);
  for (Index i = 0; i < n; ++i) {
    if (i + 1 < n) d(i, i + 1) = c1;
    if (i - 1 >= 0) d(i, i - 1) = -c1;
    if (i + 2 < n) d(i, i + 2) = -c2;
    if (i - 2 >= 0) d(i, i - 2) = c2;
  }
  return d;
}

RVector legendre_values(Index degree, double t) {
  RVector p(degree + 1);
  p(0) = 1.0;
  if (degree >= 1) p(1) = t;
  for (Index k = 2; k <= degree; ++k)
    p(k) = ((2.0 * k - 1.0) * t * p(k - 1) - (k - 1.0) * p(k - 2)) / static_cast<double>(k);
  return p;
}

}  // namespace dqm::quad
