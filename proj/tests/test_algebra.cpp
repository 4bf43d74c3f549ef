#include <doctest.h>

#include <random>

#include "dqm/algebra.hpp"
#include "dqm/errors.hpp"
#include "oracles.hpp"

using namespace dqm::algebra;

namespace {

Matrix diag(std::initializer_list<Real> values) {
  Matrix m = Matrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
  Index k = 0;
  for (Real v : values) m(k, k) = v, ++k;
  return m;
}

template <class F>
dqm::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const dqm::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return dqm::ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("transform of a diagonal compatible pair cancels to zero") {
  RelationPair p;
  p.q = 2;
  p.c = 1;
  p.B = diag({1, 3});
  p.A = diag({Real(1) / ((1 - 2) * Real(1)), Real(1) / ((1 - 2) * Real(3))});
  p.valid_block = 2;
  CHECK(relation_residual(p) < 1e-15L);
  const auto out = transform_inhomogeneous_to_homogeneous(p);
  CHECK(out.c == 0);
  CHECK(out.A.cwiseAbs().maxCoeff() < 1e-15L);
  CHECK(relation_residual(out) < 1e-15L);
}

TEST_CASE("transform keeps the q-commuting part of a") {
  RelationPair p;
  p.q = 2;
  p.c = 1;
  p.B = diag({1, 2});
  p.A = Matrix::Zero(2, 2);
  p.A(0, 0) = -1;
  p.A(0, 1) = 5;
  p.A(1, 1) = Real(-0.5);
  p.valid_block = 2;
  // entrywise a_ij (b_j - q b_i) = c delta_ij
  CHECK(relation_residual(p) < 1e-15L);
  const auto out = transform_inhomogeneous_to_homogeneous(p);
  CHECK(std::abs(out.A(0, 0)) < 1e-15L);
  CHECK(std::abs(out.A(0, 1) - Complex(5)) < 1e-15L);
  CHECK(std::abs(out.A(1, 0)) < 1e-15L);
  CHECK(std::abs(out.A(1, 1)) < 1e-15L);
  CHECK(relation_residual(out) < 1e-14L);
  // the uninverted factor leaves an inhomogeneity behind
  CHECK(relation_residual(transform_with_uninverted_factor(p)) > 0.1L);
}

TEST_CASE("transform guards") {
  RelationPair p;
  p.q = 1;
  p.c = 1;
  p.B = diag({1, 2});
  p.A = diag({1, 1});
  p.valid_block = 2;
  CHECK(code_of([&] { transform_inhomogeneous_to_homogeneous(p); }) == dqm::ErrorCode::QIsOne);
  p.q = 2;
  p.B = diag({1, 0});
  CHECK(code_of([&] { transform_inhomogeneous_to_homogeneous(p); }) == dqm::ErrorCode::SingularB);
}

TEST_CASE("property: random diagonal-compatible pairs become homogeneous") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> bdist(0.5, 3.0), qdist(0.2, 4.0), cdist(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Real q = qdist(rng);
    if (std::abs(q - 1) < 1e-3L) continue;
    const Index n = 1 + trial % 6;
    RelationPair p;
    p.q = q;
    p.c = cdist(rng);
    p.valid_block = n;
    p.B = Matrix::Zero(n, n);
    p.A = Matrix::Zero(n, n);
    for (Index k = 0; k < n; ++k) {
      p.B(k, k) = Real(bdist(rng));
      p.A(k, k) = p.c / ((1 - q) * p.B(k, k).real());
    }
    CHECK(relation_residual(transform_inhomogeneous_to_homogeneous(p)) < 1e-13L);
  }
}

TEST_CASE("q-Fock levels follow the recursion oracle") {
  for (double q : {0.5, 1.0, 2.0, 3.7}) {
    const auto s = q_fock_levels(q, 9);
    const auto ref = oracle::q_numbers(q, 9);
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(static_cast<double>(s[k]) == doctest::Approx(ref[k]).epsilon(1e-15));
  }
  const auto ordinary = q_fock_levels(1, 4);
  CHECK(ordinary[3] == 3);
  const auto half = q_fock_levels(0.5L, 3);
  CHECK(half[2] == 1.5L);
}

TEST_CASE("q=2 number operator diagonal") {
  const auto pair = build_q_fock(2, 5);
  const Matrix number = pair.raising * pair.lowering;
  const Real expected[] = {0, 1, 3, 7};
  for (Index k = 0; k < 4; ++k) CHECK(std::abs(number(k, k) - Complex(expected[k])) < 1e-15L);
}

TEST_CASE("property: ladder relation holds below the top level") {
  for (double q : {0.3, 0.5, 1.0, 1.5, 2.0, 2.5}) {
    for (Index n : {4, 8, 16}) {
      const auto pair = build_q_fock(q, n);
      CHECK(fock_relation_residual(pair, n - 1) < 1e-12L);
      CHECK_THROWS_AS(fock_relation_residual(pair, n), dqm::Error);
      // a a^+ - q a^+ a differs from 1 at the top level of the truncation
      const Matrix r = pair.lowering * pair.raising - Complex(Real(q)) * pair.raising * pair.lowering;
      CHECK(std::abs(r(n - 1, n - 1) - Complex(1)) > 0.1L);
    }
  }
}

TEST_CASE("oscillator parameters enforce K L = hbar (q + 1) / 4") {
  const auto p = QOscillatorParams::from_length(3, 1);
  CHECK(p.momentum() == doctest::Approx(1.0));
  CHECK_NOTHROW(QOscillatorParams(1, 0.5L, 1, 1));
  CHECK(code_of([] { QOscillatorParams(2, 1, 1, 1); }) == dqm::ErrorCode::InvalidArgument);
  CHECK(code_of([] { QOscillatorParams::from_length(-1, 1); }) == dqm::ErrorCode::InvalidArgument);
}

TEST_CASE("observables are exactly Hermitian and satisfy the deformed relation") {
  for (Real q : {Real(0.5), Real(1), Real(2), Real(3)}) {
    const auto pair = build_q_fock(q, 12);
    const auto osc = QOscillatorParams::from_length(q, 1);
    const auto obs = ladder_to_observables(pair, osc);
    CHECK(is_hermitian_exact(obs.X));
    CHECK(is_hermitian_exact(obs.P));
    CHECK(deformed_commutator_residual(obs.X, obs.P, osc, 10) < 1e-12L);
  }
}

TEST_CASE("undeformed quadratures give the canonical commutator") {
  const Real k = std::sqrt(Real(2)) / 2;
  const QOscillatorParams osc(1, k, k, 1);
  const auto pair = build_q_fock(1, 10);
  const auto obs = ladder_to_observables(pair, osc);
  const Matrix c = obs.X * obs.P - obs.P * obs.X;
  for (Index i = 0; i < 8; ++i)
    for (Index j = 0; j < 8; ++j) CHECK(std::abs(c(i, j) - (i == j ? Complex(0, 1) : Complex(0))) < 1e-15L);
  CHECK(deformed_commutator_residual(obs.X, obs.P, osc, 8) < 1e-12L);
}

TEST_CASE("deformed commutator guards") {
  const auto pair = build_q_fock(2, 12);
  const auto osc = QOscillatorParams::from_length(2, 1);
  const auto obs = ladder_to_observables(pair, osc);
  CHECK(code_of([&] { deformed_commutator_residual(obs.X, obs.P, osc, 12); }) == dqm::ErrorCode::BlockTooLarge);
  const auto other = QOscillatorParams::from_length(3, 1);
  CHECK(code_of([&] { ladder_to_observables(pair, other); }) == dqm::ErrorCode::QMismatch);
}
