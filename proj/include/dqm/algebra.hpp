#pragma once

// Ladder-operator algebra a a^+ - q a^+ a = 1, its truncated Fock
// representation, the observables built from it, and the map between the
// inhomogeneous relation AB - qBA = c and its homogeneous form.
//
// Matrices here use extended precision: the Fock levels grow like q^n and
// the algebraic residuals are checked at the 1e-12 level on entries of size
// ~q^N, which double precision cannot resolve.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace dqm::algebra {

using Real = long double;
using Complex = std::complex<Real>;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

/// q, L, K, hbar with K L = hbar (q + 1) / 4 enforced.
class QOscillatorParams {
 public:
  /// Computes K from q and L.
  static QOscillatorParams from_length(Real q, Real length, Real hbar = 1);

  /// Validates K L = hbar (q + 1) / 4 to relative 1e-12; throws InvalidArgument otherwise.
  QOscillatorParams(Real q, Real length, Real momentum, Real hbar = 1);

  Real q() const noexcept { return q_; }
  Real length() const noexcept { return length_; }
  Real momentum() const noexcept { return momentum_; }
  Real hbar() const noexcept { return hbar_; }

 private:
  Real q_, length_, momentum_, hbar_;
};

struct LadderPair {
  Matrix lowering;
  Matrix raising;
  Index dim = 0;
  Real q = 1;
};

/// A B - q B A = c Id, holding on indices below valid_block.
struct RelationPair {
  Matrix A;
  Matrix B;
  Real q = 1;
  Real c = 0;
  Index valid_block = 0;
};

/// Maps (A, B) obeying A B - q B A = c to (a, b) obeying a b - q b a = 0
/// via b = B, a = A + c (q - 1)^{-1} B^{-1}.
RelationPair transform_inhomogeneous_to_homogeneous(const RelationPair& pair);

/// The same map with B in place of B^{-1}, as the relation is sometimes
/// quoted. Kept only so its residual can be demonstrated; it does not
/// remove the inhomogeneity in general.
RelationPair transform_with_uninverted_factor(const RelationPair& pair);

/// max |(A B - q B A - c Id)_{ij}| over i, j < valid_block.
Real relation_residual(const RelationPair& pair);

/// Levels s_0 = 0, s_{n+1} = 1 + q s_n, so that a^+ a = diag(s_n).
std::vector<Real> q_fock_levels(Real q, Index n);

LadderPair build_q_fock(Real q, Index n);

/// max |(a a^+ - q a^+ a - Id)_{ij}| over i, j < block_end; block_end <= N - 1.
Real fock_relation_residual(const LadderPair& pair, Index block_end);

struct Observables {
  Matrix X;
  Matrix P;
};

/// X = L (a + a^+), P = i K (a^+ - a).
Observables ladder_to_observables(const LadderPair& pair, const QOscillatorParams& params);

/// max |([X,P] - i hbar (1 + (q-1)(X^2/4L^2 + P^2/4K^2)))_{ij}| over
/// i, j < block_end; block_end <= N - 2.
Real deformed_commutator_residual(const Matrix& X, const Matrix& P, const QOscillatorParams& params,
                                  Index block_end);

bool is_hermitian_exact(const Matrix& m);

}  // namespace dqm::algebra
