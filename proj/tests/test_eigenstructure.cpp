#include <doctest.h>

#include <cmath>
#include <random>

#include "dqm/eigenstructure.hpp"
#include "dqm/errors.hpp"
#include "dqm/uncertainty.hpp"
#include "oracles.hpp"

using namespace dqm;
using cd = std::complex<double>;

namespace {

const double n0 = 1.0 / std::sqrt(2.0 * oracle::pi);

// psi(lambda) = psi(0) exp(int_0^lambda k) with the exponent integrated by Simpson's rule.
cd ode_oracle(cd xi, double beta, double lambda, cd initial) {
  const double re = oracle::simpson([&](double l) { return -beta * l / (1.0 + beta * l * l); }, 0.0, lambda);
  const double im = oracle::simpson([&](double l) { return 1.0 / (1.0 + beta * l * l); }, 0.0, lambda);
  return initial * std::exp(cd(re, 0.0) + cd(0.0, -1.0) * xi * im);
}

}  // namespace

TEST_CASE("eigenfunction closed form special values") {
  const EigenfunctionParams zero(0.0, -1.0);
  for (double l : {-0.9, -0.3, 0.0, 0.6}) {
    const cd v = eigenfunction_value(zero, l);
    CHECK(std::abs(v - n0 / std::sqrt(1.0 - l * l)) < 1e-15);
  }
  CHECK(std::abs(eigenfunction_value(EigenfunctionParams(3.0, -1.0), 0.0) - n0) < 1e-16);
  CHECK(zero.normalization == doctest::Approx(n0));
  CHECK(EigenfunctionParams(0.0, 4.0).normalization == doctest::Approx(std::sqrt(2.0 / oracle::pi)));
}

TEST_CASE("closed form agrees with the integrated eigenvalue equation") {
  const cd ref = ode_oracle(1.0, -1.0, 0.5, n0);
  CHECK(std::abs(eigenfunction_value(EigenfunctionParams(1.0, -1.0), 0.5) - ref) < 1e-8 * std::abs(ref));
  for (double beta : {-3.0, -0.2, 0.5, 2.0}) {
    for (double xi : {-2.0, 0.7, 4.0}) {
      const double l = beta < 0 ? 0.7 / std::sqrt(-beta) : 1.3;
      const cd want = ode_oracle(xi, beta, l, n0);
      const cd got = eigenfunction_value(EigenfunctionParams(xi, beta, n0), l);
      CHECK(std::abs(got - want) < 1e-9 * std::abs(want));
    }
  }
}

TEST_CASE("unscaled exponent solves the equation only at |beta| = 1") {
  const EigenfunctionParams unit(1.5, -1.0);
  const EigenfunctionParams other(1.5, -4.0);
  CHECK(eigen_ode_relative_residual(unit, 0.4, ExponentForm::Unscaled) < 1e-9);
  CHECK(eigen_ode_relative_residual(other, 0.2, ExponentForm::Scaled) < 1e-9);
  CHECK(eigen_ode_relative_residual(other, 0.2, ExponentForm::Unscaled) > 1e-2);
}

TEST_CASE("modulus law for real xi and beta < 0") {
  for (double beta : {-1.0, -2.5}) {
    const EigenfunctionParams p(2.3, beta);
    for (double l : {-0.6, -0.1, 0.2, 0.55}) {
      const double scaled = l / std::sqrt(-beta);
      const double m = std::norm(eigenfunction_value(p, scaled)) * (1.0 + beta * scaled * scaled);
      CHECK(m == doctest::Approx(n0 * n0).epsilon(1e-13));
    }
  }
}

TEST_CASE("beta > 0 eigenvectors are unit vectors") {
  for (double beta : {0.3, 1.0, 5.0}) {
    const EigenfunctionParams p(0.8, beta);
    const double c = std::sqrt(beta);
    // lambda = tan(t) / c over t in (-pi/2, pi/2)
    const double total = oracle::simpson(
        [&](double t) {
          const double l = std::tan(t) / c;
          return std::norm(eigenfunction_value(p, l)) * (1.0 + beta * l * l) / c;
        },
        -oracle::pi / 2 + 1e-12, oracle::pi / 2 - 1e-12);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("ODE solutions") {
  SUBCASE("near-undeformed plane waves") {
    for (double beta : {1e-6, 1e-4}) {
      const ModelParams params(beta);
      const auto g = build_grid(params, 40, Coordinate::Lambda, Scheme::GaussLegendre, 1.0);
      const auto w = solve_eigen_ode(2.0, params, g);
      for (Index i = 0; i < g->size(); ++i)
        CHECK(std::abs(w.values(i) - n0 * std::polar(1.0, -2.0 * g->nodes()(i))) < 1e-3 * n0);
    }
  }
  SUBCASE("closed form on interior nodes") {
    const ModelParams params(-1.0);
    const auto g = build_grid(params, 32, Coordinate::Lambda, Scheme::GaussLegendre, 0.05);
    const auto w = solve_eigen_ode(1.0, params, g, n0);
    for (Index i = 0; i < g->size(); ++i) {
      const cd want = eigenfunction_value(EigenfunctionParams(1.0, -1.0, n0), g->nodes()(i));
      CHECK(std::abs(w.values(i) - want) < 1e-9 * std::abs(want));
      CHECK(std::norm(w.values(i)) * (1 - g->nodes()(i) * g->nodes()(i)) == doctest::Approx(n0 * n0).epsilon(1e-9));
    }
  }
  SUBCASE("u-grid half-density convention") {
    const ModelParams params(1.0);
    const auto g = build_grid(params, 24, Coordinate::U, Scheme::GaussLegendre, 0.2);
    const auto w = solve_eigen_ode(1.5, params, g, n0);
    const EigenfunctionParams ep(1.5, 1.0, n0);
    for (Index i = 0; i < g->size(); ++i)
      CHECK(std::abs(w.values(i) - flat_eigenfunction_value(ep, g->nodes()(i))) < 1e-9);
  }
  SUBCASE("imaginary eigenvalue at beta = 1 is square integrable") {
    const ModelParams params(1.0);
    const auto g = build_grid(params, 64, Coordinate::Lambda, Scheme::GaussLegendre, 200.0);
    const auto w = solve_eigen_ode(cd(0.0, 1.0), params, g, n0);
    double bound = 0.0;
    for (Index i = 0; i < g->size(); ++i) {
      const double l = g->nodes()(i);
      bound = std::max(bound, std::norm(w.values(i)) * (1 + l * l));
    }
    CHECK(bound <= n0 * n0 * std::exp(oracle::pi) * (1 + 1e-9));
    // |psi|^2 <= bound / (1 + lambda^2), so the tail beyond Lambda vanishes like 2 bound / Lambda
    for (double cut : {1e2, 1e4}) {
      const double tail = 2.0 * oracle::simpson([&](double l) { return bound / (1.0 + l * l); }, cut, 1e9, 1e-12);
      CHECK(tail <= 2.0 * bound / cut);
    }
  }
}

TEST_CASE("deficiency indices") {
  const auto neg = deficiency_indices(ModelParams(-1.0));
  CHECK(neg.n_plus == 0);
  CHECK(neg.n_minus == 0);
  const auto pos = deficiency_indices(ModelParams(1.0));
  CHECK(pos.n_plus == 1);
  CHECK(pos.n_minus == 1);
  CHECK(pos.plus.left.converged);
  CHECK(pos.plus.right.converged);
  for (double beta : {-0.1, 0.1}) {
    const auto r = deficiency_indices(ModelParams(beta));
    CHECK(r.n_plus == (beta > 0 ? 1 : 0));
    CHECK(r.n_minus == r.n_plus);
  }
  // beta < 0: exactly one edge diverges for each sign, with exponent near -1
  CHECK((neg.plus.left.divergent != neg.plus.right.divergent));
  CHECK(neg.boundary_exponent_plus == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK_THROWS_AS(deficiency_indices(ModelParams(0.0)), Error);
}

TEST_CASE("property: deficiency classification is scale covariant") {
  for (double beta : {-2.0, -0.5, 0.5, 2.0}) {
    const auto a = deficiency_indices(ModelParams(beta));
    for (double c : {0.5, 3.0}) {
      const auto b = deficiency_indices(ModelParams(c * c * beta));
      CHECK(a.n_plus == b.n_plus);
      CHECK(a.n_minus == b.n_minus);
    }
  }
}

TEST_CASE("generalized Fourier transform") {
  const ModelParams params(-1.0);
  const auto grid = build_grid(params, 512, Coordinate::Lambda, Scheme::GaussLegendre);
  const auto xi = uniform_xi_grid(200.0, 0.5);
  CHECK(xi.size() == 801);
  const RVector tw = trapezoid_weights(xi);
  CHECK(tw.sum() == doctest::Approx(400.0));

  SUBCASE("zero in, zero out") {
    const WaveFunction z{CVector::Zero(grid->size()), grid};
    const auto f = fourier_forward(z, xi, params);
    CHECK(f.values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(fourier_inverse(f, grid, params).values.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("mollified kernel row concentrates at its eigenvalue") {
    const double xi0 = 10.0;
    const auto map = flat_coordinate_map(-1.0);
    const auto psi = sample_state(grid, [&](double l) {
      const double u = map.u_of_lambda(l);
      return eigenfunction_value(EigenfunctionParams(xi0, -1.0), l) * std::exp(-u * u);
    });
    const auto f = fourier_forward(psi, xi, params);
    Index peak = 0;
    f.values.cwiseAbs().maxCoeff(&peak);
    CHECK(f.xi(peak) == doctest::Approx(xi0));
    CHECK(std::abs(f.values(peak + 20)) < 1e-3 * std::abs(f.values(peak)));
  }
  SUBCASE("round trip of a Gaussian bump") {
    auto psi = normalized(sample_state(grid, [](double l) { return cd(std::exp(-l * l / 0.04)); }));
    const auto back = fourier_inverse(fourier_forward(psi, xi, params), grid, params);
    CHECK(norm(WaveFunction{back.values - psi.values, grid}) < 1e-6);
  }
  SUBCASE("orthocompleteness diagnostics") {
    const auto r = verify_orthocompleteness(params, grid, xi);
    CHECK(r.ortho_residual < 1e-6);
    CHECK(r.compl_residual < 1e-6);
    CHECK(r.isometry_defect < 1e-6);
    CHECK_FALSE(r.degraded);

    OrthoCompletenessOptions wrong;
    wrong.normalization = 2.0 * n0;
    const auto bad = verify_orthocompleteness(params, grid, xi, wrong);
    CHECK(bad.ortho_residual == doctest::Approx(3.0).epsilon(1e-6));

    OrthoCompletenessOptions edge;
    const double hi = grid->hi();
    edge.test_states = {normalized(sample_state(grid, [&](double l) { return cd(std::exp(-std::pow((l - hi) / 2e-4, 2))); }))};
    const auto degraded = verify_orthocompleteness(params, grid, xi, edge);
    CHECK(degraded.degraded);
    CHECK(degraded.compl_residual > 1e-6);
  }
  CHECK_THROWS_AS(fourier_forward(WaveFunction{CVector::Zero(8), build_grid(ModelParams(1.0), 8, Coordinate::U,
                                                                              Scheme::Uniform)},
                                  xi, ModelParams(1.0)),
                  Error);
}

TEST_CASE("finite-dimensional representations") {
  const ModelParams unit(-1.0);
  const std::vector<int> signs{1, -1};
  const std::vector<double> pos{0.3, -1.7};
  const auto rep = finite_dim_rep(unit, signs, pos);
  const auto sides = finite_rep_ccr_sides(rep, unit);
  CHECK(sides.commutator.cwiseAbs().maxCoeff() == 0.0);
  CHECK(sides.rhs.cwiseAbs().maxCoeff() == 0.0);
  const std::vector<int> one{1};
  const std::vector<double> origin{0.0};
  CHECK(finite_dim_rep(ModelParams(-4.0), one, origin).P(0, 0) == cd(0.5));
  try {
    finite_dim_rep(ModelParams(1.0), one, origin);
    FAIL("expected WrongRegime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongRegime);
  }
}
