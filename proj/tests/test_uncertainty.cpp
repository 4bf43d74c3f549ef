#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "dqm/errors.hpp"
#include "dqm/parallel.hpp"
#include "dqm/uncertainty.hpp"
#include "oracles.hpp"

using namespace dqm;
using cd = std::complex<double>;

namespace {

struct Setup {
  ModelParams params;
  GridPtr grid;
  DiscretizedOperator x, p;
};

Setup make(double beta, Index n, Coordinate coord, std::optional<double> trunc = std::nullopt) {
  const ModelParams params(beta);
  auto grid = build_grid(params, n, coord, Scheme::GaussLegendre, trunc);
  return {params, grid, position_operator(grid, params), momentum_operator(grid)};
}

}  // namespace

TEST_CASE("undeformed Heisenberg bound") {
  const auto s = make(0.0, 160, Coordinate::Lambda, 12.0);
  const auto gauss = normalized(sample_state(s.grid, [](double l) { return cd(std::exp(-l * l / 2.0)); }));
  const auto m = moments(gauss, s.x, s.p, s.params);
  CHECK(m.mean_p == doctest::Approx(0.0).scale(1.0));
  CHECK(m.robertson_rhs == doctest::Approx(0.5));
  CHECK(check_uncertainty_bound(m).slack == doctest::Approx(0.0).epsilon(1e-8).scale(1.0));
  CHECK(check_uncertainty_bound(m).satisfied);
  const auto wave = normalized(sample_state(s.grid, [](double l) {
    return std::exp(-std::pow(l - 1.0, 2) / 0.8) * std::polar(1.0, 3.0 * l);
  }));
  const auto mw = moments(wave, s.x, s.p, s.params);
  CHECK(mw.dx * mw.dp >= 0.5 - 1e-10);
}

TEST_CASE("even real states have zero mean momentum") {
  const auto s = make(-1.0, 128, Coordinate::Lambda);
  const auto psi = normalized(sample_state(s.grid, [](double l) { return cd(std::exp(-8 * l * l) * (1 + l * l)); }));
  CHECK(std::abs(moments(psi, s.x, s.p, s.params).mean_p) < 1e-15);
}

TEST_CASE("Dirichlet ground state on the flattened interval") {
  for (double beta : {1.0, 4.0}) {
    const auto s = make(beta, 256, Coordinate::U, 0.0);
    const double c = std::sqrt(beta);
    const auto psi = normalized(sample_in_grid_coordinate(s.grid, [&](double u) { return cd(std::cos(c * u)); }));
    const auto m = moments(psi, s.x, s.p, s.params);
    CHECK(m.dx == doctest::Approx(c).epsilon(0.01));
    CHECK(check_uncertainty_bound(m).satisfied);
  }
}

TEST_CASE("moments reject unnormalized states") {
  const auto s = make(1.0, 64, Coordinate::U);
  WaveFunction psi{CVector::Constant(64, cd(2.0)), s.grid};
  try {
    moments(psi, s.x, s.p, s.params);
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
}

TEST_CASE("sampled domain states") {
  const auto s = make(1.0, 256, Coordinate::U);
  const auto a = sample_domain_states(StateFamily{42, 25}, s.grid);
  const auto b = sample_domain_states(StateFamily{42, 25}, s.grid);
  REQUIRE(a.size() == 25);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].values == b[k].values);
    CHECK(norm(a[k]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(a[k].values(0)) < 1e-10);
    CHECK(std::abs(a[k].values(255)) < 1e-10);
  }
  CHECK(sample_domain_states(StateFamily{42, 0}, s.grid).empty());
  const auto prefix = sample_domain_states(StateFamily{42, 3}, s.grid);
  CHECK(prefix[2].values == a[2].values);
  CHECK(sample_domain_states(StateFamily{43, 1}, s.grid)[0].values != a[0].values);
}

TEST_CASE("property: bound holds for 1000 states per regime") {
  for (double beta : {1.0, -1.0}) {
    const auto s = make(beta, 256, Coordinate::U);
    const auto states = sample_domain_states(StateFamily{1234, 1000}, s.grid);
    std::vector<Moments> ms(states.size());
    parallel_for(states.size(), [&](std::size_t k) { ms[k] = moments(states[k], s.x, s.p, s.params); });
    double min_dx = HUGE_VAL, min_rhs = HUGE_VAL;
    for (const auto& m : ms) {
      const auto b = check_uncertainty_bound(m);
      CHECK(b.slack >= -kBoundSlackTolerance);
      CHECK(b.satisfied);
      if (beta < 0) CHECK(m.dp <= 1.0);
      min_dx = std::min(min_dx, m.dx);
      min_rhs = std::min(min_rhs, m.robertson_rhs);
    }
    if (beta > 0) CHECK(min_dx >= std::sqrt(beta) - 1e-9);
    if (beta < 0) CHECK(min_rhs <= 0.5);
  }
}

TEST_CASE("bounded momentum allows a Robertson side below hbar/2") {
  const auto s = make(-1.0, 256, Coordinate::U);
  // concentrated near lambda = 0.9: <1 - p^2> is about 0.19
  const auto map = flat_coordinate_map(-1.0);
  const double u0 = map.u_of_lambda(0.9);
  const auto psi = normalized(sample_in_grid_coordinate(s.grid, [&](double u) { return cd(std::exp(-std::pow(u - u0, 2))); }));
  const auto m = moments(psi, s.x, s.p, s.params);
  CHECK(m.robertson_rhs < 0.25);
  CHECK(check_uncertainty_bound(m).satisfied);
}

TEST_CASE("property: spreads are invariant under phase and reflection") {
  const auto s = make(-1.0, 200, Coordinate::Lambda, 0.01);
  const auto states = sample_domain_states(StateFamily{8, 10}, s.grid);
  for (const auto& psi : states) {
    const auto m = moments(psi, s.x, s.p, s.params);
    const WaveFunction phased{psi.values * std::polar(1.0, 0.77), psi.grid};
    const auto mp = moments(phased, s.x, s.p, s.params);
    CHECK(mp.dx == doctest::Approx(m.dx).epsilon(1e-10));
    CHECK(mp.dp == doctest::Approx(m.dp).epsilon(1e-10));
    // the Gauss-Legendre grid is symmetric, so reflection reverses the node order
    const WaveFunction reflected{psi.values.reverse(), psi.grid};
    const auto mr = moments(reflected, s.x, s.p, s.params);
    CHECK(mr.dx == doctest::Approx(m.dx).epsilon(1e-8));
    CHECK(mr.dp == doctest::Approx(m.dp).epsilon(1e-10));
    CHECK(mr.mean_p == doctest::Approx(-m.mean_p).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("sampling is independent of the thread count") {
  const auto s = make(1.0, 128, Coordinate::U);
  setenv("DEFORMED_QM_THREADS", "1", 1);
  const auto one = sample_domain_states(StateFamily{3, 40}, s.grid);
  setenv("DEFORMED_QM_THREADS", "7", 1);
  const auto many = sample_domain_states(StateFamily{3, 40}, s.grid);
  unsetenv("DEFORMED_QM_THREADS");
  for (std::size_t k = 0; k < one.size(); ++k) CHECK(one[k].values == many[k].values);
  CHECK(thread_cap() >= 1);
}
