#include "dqm/algebra.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dqm/errors.hpp"

namespace dqm::algebra {

namespace {

Real block_max_abs(const Matrix& m, Index block) {
  if (block <= 0) return 0;
  return m.topLeftCorner(block, block).cwiseAbs().maxCoeff();
}

void require_square_pair(const RelationPair& pair) {
  if (pair.A.rows() != pair.A.cols() || pair.B.rows() != pair.B.cols() || pair.A.rows() != pair.B.rows())
    fail(ErrorCode::InvalidArgument, "relation pair needs square matrices of equal size");
  if (pair.valid_block < 0 || pair.valid_block > pair.A.rows())
    fail(ErrorCode::InvalidArgument, "valid block exceeds matrix size");
}

Matrix checked_inverse(const Matrix& b) {
  Eigen::FullPivLU<Matrix> lu(b);
  lu.setThreshold(Real(1e-14));
  if (!lu.isInvertible()) fail(ErrorCode::SingularB, "B is not invertible within tolerance");
  Matrix inv = lu.inverse();
  const Real check = (b * inv - Matrix::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff();
  if (!std::isfinite(static_cast<double>(check)) || check > Real(1e-10))
    fail(ErrorCode::SingularB, "B is numerically singular (inverse residual " +
                                   std::to_string(static_cast<double>(check)) + ")");
  return inv;
}

RelationPair shifted(const RelationPair& pair, const Matrix& shift_factor) {
  if (pair.q == Real(1)) fail(ErrorCode::QIsOne, "transform requires q != 1");
  RelationPair out;
  out.B = pair.B;
  out.A = pair.A + Complex(pair.c / (pair.q - Real(1))) * shift_factor;
  out.q = pair.q;
  out.c = 0;
  out.valid_block = pair.valid_block;
  return out;
}

}  // namespace

QOscillatorParams QOscillatorParams::from_length(Real q, Real length, Real hbar) {
  if (!(length > 0)) fail(ErrorCode::InvalidArgument, "L must be positive");
  return QOscillatorParams(q, length, hbar * (q + 1) / (4 * length), hbar);
}

QOscillatorParams::QOscillatorParams(Real q, Real length, Real momentum, Real hbar)
    : q_(q), length_(length), momentum_(momentum), hbar_(hbar) {
  if (!(q > 0)) fail(ErrorCode::InvalidArgument, "q must be positive");
  if (!(length > 0) || !(momentum > 0)) fail(ErrorCode::InvalidArgument, "L and K must be positive");
  if (!(hbar > 0)) fail(ErrorCode::InvalidArgument, "hbar must be positive");
  const Real target = hbar * (q + 1) / 4;
  if (std::abs(length * momentum - target) > Real(1e-12) * target)
    fail(ErrorCode::InvalidArgument, "K L must equal hbar (q + 1) / 4");
}

RelationPair transform_inhomogeneous_to_homogeneous(const RelationPair& pair) {
  require_square_pair(pair);
  if (pair.q == Real(1)) fail(ErrorCode::QIsOne, "transform requires q != 1");
  return shifted(pair, checked_inverse(pair.B));
}

RelationPair transform_with_uninverted_factor(const RelationPair& pair) {
  require_square_pair(pair);
  return shifted(pair, pair.B);
}

Real relation_residual(const RelationPair& pair) {
  require_square_pair(pair);
  const Index n = pair.A.rows();
  const Matrix r = pair.A * pair.B - Complex(pair.q) * pair.B * pair.A - Complex(pair.c) * Matrix::Identity(n, n);
  return block_max_abs(r, pair.valid_block);
}

std::vector<Real> q_fock_levels(Real q, Index n) {
  std::vector<Real> s(static_cast<std::size_t>(n), Real(0));
  for (Index k = 1; k < n; ++k) s[k] = 1 + q * s[k - 1];
  return s;
}

LadderPair build_q_fock(Real q, Index n) {
  if (!(q > 0)) fail(ErrorCode::InvalidArgument, "q must be positive");
  if (n < 2) fail(ErrorCode::InvalidArgument, "Fock dimension must be at least 2");
  const auto s = q_fock_levels(q, n);
  LadderPair pair;
  pair.dim = n;
  pair.q = q;
  pair.lowering = Matrix::Zero(n, n);
  // a|k> = sqrt(s_k) |k-1>
  for (Index k = 1; k < n; ++k) pair.lowering(k - 1, k) = Complex(std::sqrt(s[k]));
  pair.raising = pair.lowering.adjoint();
  return pair;
}

Real fock_relation_residual(const LadderPair& pair, Index block_end) {
  if (block_end > pair.dim - 1) fail(ErrorCode::BlockTooLarge, "the top Fock level is truncated");
  const Matrix& a = pair.lowering;
  const Matrix& ad = pair.raising;
  const Matrix r = a * ad - Complex(pair.q) * ad * a - Matrix::Identity(pair.dim, pair.dim);
  return block_max_abs(r, block_end);
}

Observables ladder_to_observables(const LadderPair& pair, const QOscillatorParams& params) {
  if (std::abs(params.q() - pair.q) > Real(1e-12) * std::max(Real(1), pair.q))
    fail(ErrorCode::QMismatch, "oscillator parameters and ladder pair disagree on q");
  const Complex i_unit(0, 1);
  Observables obs;
  obs.X = Complex(params.length()) * (pair.lowering + pair.raising);
  obs.P = i_unit * Complex(params.momentum()) * (pair.raising - pair.lowering);
  return obs;
}

Real deformed_commutator_residual(const Matrix& X, const Matrix& P, const QOscillatorParams& params,
                                  Index block_end) {
  const Index n = X.rows();
  if (X.cols() != n || P.rows() != n || P.cols() != n)
    fail(ErrorCode::InvalidArgument, "X and P must be square and of equal size");
  if (block_end > n - 2) fail(ErrorCode::BlockTooLarge, "truncation corrupts the top two levels");
  const Real L = params.length();
  const Real K = params.momentum();
  const Matrix commutator = X * P - P * X;
  const Matrix correction = Complex(1 / (4 * L * L)) * (X * X) + Complex(1 / (4 * K * K)) * (P * P);
  const Matrix rhs = Complex(0, params.hbar()) *
                     (Matrix::Identity(n, n) + Complex(params.q() - 1) * correction);
  return block_max_abs(commutator - rhs, block_end);
}

bool is_hermitian_exact(const Matrix& m) {
  return m.rows() == m.cols() && m == m.adjoint();
}

}  // namespace dqm::algebra
