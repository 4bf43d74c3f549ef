#include <doctest.h>

#include <cmath>
#include <random>

#include "dqm/errors.hpp"
#include "dqm/extensions.hpp"
#include "dqm/uncertainty.hpp"
#include "oracles.hpp"

using namespace dqm;

TEST_CASE("overlap of formal eigenvectors") {
  CHECK(eigenvector_overlap(0.4, 0.4, 1.0) == 1.0);
  CHECK(eigenvector_overlap(2.0, 0.0, 1.0) == 0.0);
  CHECK(eigenvector_overlap(1.0, 0.0, 1.0) == doctest::Approx(2.0 / oracle::pi).epsilon(1e-15));
  CHECK(eigenvector_overlap_quadrature(1.0, 0.0, 1.0) == doctest::Approx(0.636619772368).epsilon(1e-11));
  for (double beta : {0.1, 2.0, 7.0}) {
    const double c = std::sqrt(beta);
    for (double d : {0.3, 1.1, 5.0}) {
      const double want = oracle::sinc(d * oracle::pi / (2 * c));
      CHECK(eigenvector_overlap(d, 0.0, beta) == doctest::Approx(want).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(eigenvector_overlap(0.0, 1.0, -1.0), Error);
}

TEST_CASE("property: overlap formula against quadrature, symmetric and bounded") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> bd(0.1, 10.0), xd(-6.0, 6.0);
  for (int k = 0; k < 100; ++k) {
    const double beta = bd(rng), xi = xd(rng), xp = xd(rng);
    const double closed = eigenvector_overlap(xi, xp, beta);
    CHECK(std::abs(closed - eigenvector_overlap_quadrature(xi, xp, beta)) < 1e-10);
    CHECK(closed == eigenvector_overlap(xp, xi, beta));
    CHECK(std::abs(closed) < 1.0);
  }
}

TEST_CASE("extension spectra from the closed form") {
  const auto a = extension_spectrum(ExtensionLabel(0.0), 1.0, -1, 1);
  CHECK(a.values == std::vector<double>{-2.0, 0.0, 2.0});
  const auto b = extension_spectrum(ExtensionLabel(oracle::pi), 1.0, 0, 1);
  CHECK(b.values[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.values[1] == doctest::Approx(3.0).epsilon(1e-15));
  for (double s : {0.0, 1.0, 4.0}) CHECK(extension_spectrum(ExtensionLabel(s), 0.25, -3, 3).spacing() == 1.0);
  CHECK(ExtensionLabel(2 * oracle::pi + 0.5).s() == doctest::Approx(0.5));
  CHECK(ExtensionLabel(-0.5).s() == doctest::Approx(2 * oracle::pi - 0.5));
}

TEST_CASE("local group acts by lattice translation") {
  const ExtensionLabel base(0.3);
  const auto same = local_group_action(base, 2 * oracle::pi);
  CHECK(same.s() == doctest::Approx(base.s()).epsilon(1e-14));
  const auto half = local_group_action(ExtensionLabel(0.0), oracle::pi);
  const auto v0 = extension_spectrum(ExtensionLabel(0.0), 1.0, 0, 3).values;
  const auto v1 = extension_spectrum(half, 1.0, 0, 3).values;
  for (std::size_t k = 0; k < v0.size(); ++k) CHECK(v1[k] - v0[k] == doctest::Approx(1.0));
  const auto composed = local_group_action(local_group_action(base, 1.1), 2.5);
  CHECK(composed.s() == doctest::Approx(local_group_action(base, 3.6).s()).epsilon(1e-14));
}

TEST_CASE("eigenvalue orbits") {
  const auto o = eigenvalue_orbit(0, 1.0, 64);
  CHECK(o.lower == 0.0);
  CHECK(o.upper == 2.0);
  for (double v : o.sweep) {
    CHECK(v >= 0.0);
    CHECK(v < 2.0);
  }
  CHECK(eigenvalue_orbit(3, 4.0, 8).half_width == 2.0);
  const auto two = eigenvalue_orbit(1, 2.0, 2);
  CHECK(two.sweep[1] - two.sweep[0] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("boundary-phase diagonalization reproduces the lattices") {
  for (double s : {0.0, oracle::pi / 2, oracle::pi, 5.0}) {
    const ExtensionLabel label(s);
    const auto eig = extension_diagonalize(label, ModelParams(1.0), 256);
    for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
      const double want = 2.0 * eig.lattice_index[static_cast<std::size_t>(k)] + label.s() / oracle::pi;
      CHECK(std::abs(eig.eigenvalues(k) - want) < 1e-6 * std::max(1.0, std::abs(want)));
    }
    // eigenvectors orthonormal in the grid inner product
    const CMatrix gram = eig.eigenvectors.adjoint() * eig.grid->weights().asDiagonal() * eig.eigenvectors;
    CHECK((gram - CMatrix::Identity(256, 256)).cwiseAbs().maxCoeff() < 1e-8);
  }
  CHECK_THROWS_AS(extension_diagonalize(ExtensionLabel(0.0), ModelParams(1.0), 8), Error);
  CHECK_THROWS_AS(extension_diagonalize(ExtensionLabel(0.0), ModelParams(-1.0), 64), Error);
}

TEST_CASE("extension eigenvectors are flat plane waves pulled back") {
  const ModelParams params(1.0);
  const auto eig = extension_diagonalize(ExtensionLabel(1.0), params, 64);
  const auto& u = eig.grid->nodes();
  for (Index k : {Index(10), Index(32), Index(50)}) {
    const CVector phi = eig.eigenvectors.col(k);
    // |phi| uniform: a single Fourier mode e^{-i v u}
    CHECK(phi.cwiseAbs().maxCoeff() - phi.cwiseAbs().minCoeff() < 1e-10);
    const std::complex<double> ratio = phi(1) / phi(0);
    CHECK(std::abs(ratio - std::polar(1.0, -eig.eigenvalues(k) * (u(1) - u(0)))) < 1e-10);
    const CVector psi = pull_back_to_lambda(eig, k);
    const RVector jac = eig.grid->jacobian();
    for (Index i = 0; i < u.size(); i += 7) CHECK(std::abs(psi(i) * std::sqrt(jac(i)) - phi(i)) < 1e-14);
  }
}

TEST_CASE("lattice Gram matrices") {
  const RMatrix g = lattice_gram(ExtensionLabel(0.0), 1.0, 5);
  CHECK((g - RMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(lattice_gram(ExtensionLabel(2.0), 3.0, 1)(0, 0) == 1.0);
  const std::vector<double> off{0.0, 1.5, 3.0};
  const RMatrix h = overlap_gram(off, 1.0);
  CHECK(h(0, 1) == doctest::Approx(oracle::sinc(1.5 * oracle::pi / 2)));
  CHECK(std::abs(h(0, 1)) > 0.1);
  const RMatrix hq = overlap_gram_quadrature(off, 1.0);
  CHECK((h - hq).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("all extensions act alike on boundary-vanishing states") {
  const ModelParams params(1.0);
  const auto grid = build_extension_grid(params, 256);
  CHECK(grid->length() == doctest::Approx(oracle::pi));
  const auto states = sample_domain_states(StateFamily{99, 12}, grid);
  for (double s : {oracle::pi, 2.0}) {
    const auto x0 = extension_position_operator(ExtensionLabel(0.0), params, grid);
    const auto xs = extension_position_operator(ExtensionLabel(s), params, grid);
    CHECK(hermiticity_residual(xs) < 1e-12);
    for (const auto& psi : states) CHECK(norm(WaveFunction{x0.apply(psi.values) - xs.apply(psi.values), grid}) < 1e-8);
  }
  // a state not vanishing at the ends distinguishes the extensions
  const auto flat = normalized(sample_in_grid_coordinate(grid, [](double u) { return std::complex<double>(1.0 + u); }));
  const auto x0 = extension_position_operator(ExtensionLabel(0.0), params, grid);
  const auto xpi = extension_position_operator(ExtensionLabel(oracle::pi), params, grid);
  CHECK(norm(WaveFunction{x0.apply(flat.values) - xpi.apply(flat.values), grid}) > 1e-2);
}

TEST_CASE("variational minimal position uncertainty") {
  for (double beta : {0.25, 1.0, 4.0}) {
    const ModelParams params(beta);
    const auto r = minimal_uncertainty_search(params, 512);
    CHECK(r.dx_min >= std::sqrt(beta) - 1e-9);
    CHECK(r.dx_min <= 1.01 * std::sqrt(beta));
    CHECK(dirichlet_oracle_eigenvalue(beta) == doctest::Approx(beta).epsilon(1e-9));
    CHECK(dirichlet_oracle_eigenvalue(beta) ==
          doctest::Approx(oracle::dirichlet_ground(oracle::pi / std::sqrt(beta))).epsilon(1e-9));
  }
  CHECK(minimal_uncertainty_search(ModelParams(0.25), 256).dx_min == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(minimal_uncertainty_search(ModelParams(1.0), 64), Error);
  CHECK_THROWS_AS(minimal_uncertainty_search(ModelParams(-1.0), 256), Error);
}

TEST_CASE("property: the variational bound never undershoots") {
  for (double beta : {0.01, 0.3, 2.0, 9.0}) {
    for (Index n : {128, 300, 777}) {
      const auto r = minimal_uncertainty_search(ModelParams(beta), n);
      CHECK(r.dx_min >= std::sqrt(beta) - 1e-9);
    }
  }
}

TEST_CASE("minimizer is even, centred and saturates the uncertainty relation") {
  const ModelParams params(1.0);
  const auto r = minimal_uncertainty_search(params, 512);
  const auto& psi = r.minimizer;
  CHECK(norm(psi) == doctest::Approx(1.0).epsilon(1e-12));
  const Index n = psi.grid->size();
  for (Index i = 0; i < n / 2; i += 13) CHECK(std::abs(psi.values(i) - psi.values(n - 1 - i)) < 1e-10);
  const auto x = position_operator(psi.grid, params);
  const auto p = momentum_operator(psi.grid);
  const auto m = moments(psi, x, p, params);
  CHECK(std::abs(m.mean_x) < 1e-10);
  CHECK(std::abs(m.mean_p) < 1e-10);
  CHECK(m.dx == doctest::Approx(1.0).epsilon(0.01));
  CHECK(m.dx * m.dp - m.robertson_rhs >= -1e-9);
}
