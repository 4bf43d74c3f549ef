#pragma once

#include <span>

#include "dqm/params.hpp"

namespace dqm::quad {

struct Rule {
  RVector nodes;
  RVector weights;
};

/// n-point Gauss-Legendre rule on [lo, hi], nodes ascending.
Rule gauss_legendre(Index n, double lo = -1.0, double hi = 1.0);

/// Composite Gauss-Legendre rule: `panels` equal panels of `order` points each.
Rule composite_gauss_legendre(Index panels, Index order, double lo, double hi);

/// Barycentric weights of the Gauss-Legendre nodes, computed in closed form
/// from the quadrature weights (no products over node differences).
RVector gauss_legendre_barycentric(const RVector& nodes01, const RVector& weights01);

/// Dense differentiation matrix of the polynomial interpolant through the nodes.
RMatrix barycentric_differentiation(const RVector& nodes, const RVector& bary);

/// Evaluates the polynomial interpolant at arbitrary points.
CVector barycentric_interpolate(const RVector& nodes, const RVector& bary, const CVector& values,
                                std::span<const double> points);

/// Fourth-order central differences with zero values beyond both ends;
/// exactly skew-symmetric.
RMatrix central_difference_4(Index n, double h);

/// Legendre polynomials P_0..P_{degree} at t, by the three-term recurrence.
RVector legendre_values(Index degree, double t);

}  // namespace dqm::quad
