#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dqm/algebra.hpp"
#include "dqm/eigenstructure.hpp"
#include "dqm/errors.hpp"
#include "dqm/extensions.hpp"
#include "dqm/momspace.hpp"
#include "dqm/uncertainty.hpp"
#include "dqm/verification.hpp"

namespace py = pybind11;
using namespace dqm;

namespace {

py::dict edge_dict(const EdgeRecord& e) {
  py::dict d;
  d["eps"] = e.eps;
  d["integrals"] = e.integrals;
  d["exponent"] = e.exponent;
  d["fit_residual"] = e.fit_residual;
  d["converged"] = e.converged;
  d["divergent"] = e.divergent;
  return d;
}

Coordinate coordinate_of(const std::string& s) {
  if (s == "lambda") return Coordinate::Lambda;
  if (s == "u") return Coordinate::U;
  throw py::value_error("coordinate must be 'lambda' or 'u'");
}

Scheme scheme_of(const std::string& s) {
  if (s == "gauss-legendre") return Scheme::GaussLegendre;
  if (s == "uniform") return Scheme::Uniform;
  throw py::value_error("scheme must be 'gauss-legendre' or 'uniform'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerics for [x,p] = i hbar (1 + beta p^2)";
  m.attr("__version__") = DQM_VERSION;

  // Error.args == (message, code name)
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result([&]() { return py::exception<Error>(m, "Error", PyExc_RuntimeError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object code = py::str(std::string(to_string(e.code())));
      PyErr_SetObject(error.get_stored().ptr(), py::make_tuple(py::str(e.what()), code).ptr());
    }
  });

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<double, double>(), py::arg("beta"), py::arg("hbar") = 1.0)
      .def_property_readonly("beta", &ModelParams::beta)
      .def_property_readonly("hbar", &ModelParams::hbar)
      .def_property_readonly("momentum_edge", &ModelParams::momentum_edge)
      .def_property_readonly("minimal_position_uncertainty", &ModelParams::minimal_position_uncertainty)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(beta=" + format_double(p.beta()) + ", hbar=" + format_double(p.hbar()) + ")";
      });

  py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
      .def_property_readonly("nodes", [](const Grid& g) { return RVector(g.nodes()); })
      .def_property_readonly("weights", [](const Grid& g) { return RVector(g.weights()); })
      .def_property_readonly("lambda_values", &Grid::lambda_values)
      .def_property_readonly("lo", &Grid::lo)
      .def_property_readonly("hi", &Grid::hi)
      .def("__len__", &Grid::size);

  m.def(
      "build_grid",
      [](const ModelParams& p, Index n, const std::string& coordinate, const std::string& scheme,
         std::optional<double> truncation) {
        return std::const_pointer_cast<Grid>(build_grid(p, n, coordinate_of(coordinate), scheme_of(scheme), truncation));
      },
      py::arg("params"), py::arg("n"), py::arg("coordinate") = "lambda", py::arg("scheme") = "gauss-legendre",
      py::arg("truncation") = py::none());

  m.def(
      "u_of_lambda", [](double beta, double lambda) { return flat_coordinate_map(beta).u_of_lambda(lambda); },
      py::arg("beta"), py::arg("lambda_"));

  m.def(
      "ccr_residual",
      [](const ModelParams& p, const std::shared_ptr<Grid>& g, Index margin) {
        const GridPtr grid = g;
        return ccr_residual(position_operator(grid, p), momentum_operator(grid), p, margin);
      },
      py::arg("params"), py::arg("grid"), py::arg("interior_margin"));

  m.def(
      "eigenfunction_value",
      [](std::complex<double> xi, double beta, double lambda, std::optional<double> normalization, bool unscaled) {
        return eigenfunction_value(EigenfunctionParams(xi, beta, normalization), lambda,
                                   unscaled ? ExponentForm::Unscaled : ExponentForm::Scaled);
      },
      py::arg("xi"), py::arg("beta"), py::arg("lambda_"), py::arg("normalization") = py::none(),
      py::arg("unscaled") = false);

  m.def(
      "solve_eigen_ode",
      [](std::complex<double> xi, const ModelParams& p, const std::shared_ptr<Grid>& g) {
        return solve_eigen_ode(xi, p, g).values;
      },
      py::arg("xi"), py::arg("params"), py::arg("grid"));

  m.def(
      "deficiency_indices",
      [](const ModelParams& p) {
        const auto r = deficiency_indices(p);
        py::dict d;
        d["n_plus"] = r.n_plus;
        d["n_minus"] = r.n_minus;
        d["plus"] = py::dict(py::arg("left") = edge_dict(r.plus.left), py::arg("right") = edge_dict(r.plus.right));
        d["minus"] = py::dict(py::arg("left") = edge_dict(r.minus.left), py::arg("right") = edge_dict(r.minus.right));
        return d;
      },
      py::arg("params"));

  m.def(
      "fourier_round_trip",
      [](const ModelParams& p, Index n, double half_width, double spacing, std::uint64_t seed, int states) {
        const auto grid = build_grid(p, n, Coordinate::Lambda, Scheme::GaussLegendre);
        OrthoCompletenessOptions opts;
        opts.test_states = sample_domain_states(StateFamily{seed, states}, grid);
        const auto r = verify_orthocompleteness(p, grid, uniform_xi_grid(half_width, spacing), opts);
        py::dict d;
        d["ortho_residual"] = r.ortho_residual;
        d["compl_residual"] = r.compl_residual;
        d["isometry_defect"] = r.isometry_defect;
        d["state_errors"] = r.state_errors;
        return d;
      },
      py::arg("params"), py::arg("n") = 512, py::arg("xi_half_width") = 200.0, py::arg("xi_spacing") = 0.5,
      py::arg("seed") = 7, py::arg("states") = 10);

  m.def("eigenvector_overlap", &eigenvector_overlap, py::arg("xi"), py::arg("xi_prime"), py::arg("beta"));
  m.def("eigenvector_overlap_quadrature", &eigenvector_overlap_quadrature, py::arg("xi"), py::arg("xi_prime"),
        py::arg("beta"), py::arg("nodes") = 128);

  m.def(
      "extension_spectrum",
      [](double s, double beta, int r_min, int r_max, double hbar) {
        return extension_spectrum(ExtensionLabel(s), beta, r_min, r_max, hbar).values;
      },
      py::arg("s"), py::arg("beta"), py::arg("r_min"), py::arg("r_max"), py::arg("hbar") = 1.0);

  m.def(
      "extension_diagonalize",
      [](double s, const ModelParams& p, Index n) {
        const auto e = extension_diagonalize(ExtensionLabel(s), p, n);
        return py::make_tuple(e.eigenvalues, e.lattice_index);
      },
      py::arg("s"), py::arg("params"), py::arg("n") = 256);

  m.def(
      "lattice_gram", [](double s, double beta, Index count) { return lattice_gram(ExtensionLabel(s), beta, count); },
      py::arg("s"), py::arg("beta"), py::arg("count"));

  m.def(
      "minimal_uncertainty", [](const ModelParams& p, Index n) { return minimal_uncertainty_search(p, n).dx_min; },
      py::arg("params"), py::arg("n") = 512);
  m.def("dirichlet_oracle_eigenvalue", &dirichlet_oracle_eigenvalue, py::arg("beta"), py::arg("n") = 48);

  m.def(
      "uncertainty_slacks",
      [](const ModelParams& p, Index n, std::uint64_t seed, int count) {
        const auto grid = build_grid(p, n, p.beta() == 0.0 ? Coordinate::Lambda : Coordinate::U, Scheme::GaussLegendre);
        const auto x = position_operator(grid, p);
        const auto mom = momentum_operator(grid);
        std::vector<double> out;
        for (const auto& psi : sample_domain_states(StateFamily{seed, count}, grid))
          out.push_back(check_uncertainty_bound(moments(psi, x, mom, p)).slack);
        return out;
      },
      py::arg("params"), py::arg("n") = 256, py::arg("seed") = 7, py::arg("count") = 100);

  m.def(
      "fock_residuals",
      [](double q, Index n, double length, double hbar) {
        const auto pair = algebra::build_q_fock(q, n);
        const auto osc = algebra::QOscillatorParams::from_length(q, length, hbar);
        const auto obs = algebra::ladder_to_observables(pair, osc);
        return py::make_tuple(static_cast<double>(algebra::fock_relation_residual(pair, n - 1)),
                              static_cast<double>(algebra::deformed_commutator_residual(obs.X, obs.P, osc, n - 2)));
      },
      py::arg("q"), py::arg("n") = 16, py::arg("length") = 1.0, py::arg("hbar") = 1.0);

  m.def(
      "finite_representation",
      [](const ModelParams& p, const std::vector<int>& signs, const std::vector<double>& positions) {
        const auto rep = finite_dim_rep(p, signs, positions);
        const auto sides = finite_rep_ccr_sides(rep, p);
        return py::make_tuple(rep.X, rep.P, sides.commutator, sides.rhs);
      },
      py::arg("params"), py::arg("signs"), py::arg("positions"));

  m.def(
      "run_acceptance",
      [](std::uint64_t seed, Index grid_size) {
        AcceptanceConfig cfg;
        cfg.seed = seed;
        cfg.grid_size = grid_size;
        py::list out;
        for (const auto& r : run_acceptance(cfg)) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["metric"] = r.metric;
          d["tolerance"] = r.tolerance;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 7, py::arg("grid_size") = 512);
}
