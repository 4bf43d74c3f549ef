// deformed-qm: command-line driver for the deformed commutation relation library.
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dqm/algebra.hpp"
#include "dqm/eigenstructure.hpp"
#include "dqm/errors.hpp"
#include "dqm/extensions.hpp"
#include "dqm/momspace.hpp"
#include "dqm/parallel.hpp"
#include "dqm/uncertainty.hpp"
#include "dqm/verification.hpp"

namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, std::string, bool>;

enum class Format { Csv, Json };

struct RunConfig {
  double beta = 1.0;
  double hbar = 1.0;
  long long grid_size = 512;
  std::string scheme = "gauss-legendre";
  unsigned long long seed = 7;
  Format format = Format::Csv;
  std::string output = "-";
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  json summary = json::object();
  std::vector<std::pair<std::string, bool>> criteria;
  std::string line;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

dqm::Scheme scheme_of(const RunConfig& cfg) {
  return cfg.scheme == "uniform" ? dqm::Scheme::Uniform : dqm::Scheme::GaussLegendre;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return dqm::format_double(v);
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return csv_quote(v);
      },
      c);
}

json json_cell(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

std::string render(const Table& t, const RunConfig& cfg, const std::string& subcommand) {
  std::ostringstream out;
  if (cfg.format == Format::Csv) {
    for (std::size_t k = 0; k < t.columns.size(); ++k) out << (k ? "," : "") << csv_quote(t.columns[k]);
    out << "\r\n";
    for (const auto& row : t.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_cell(row[k]);
      out << "\r\n";
    }
    return out.str();
  }
  json doc;
  json& meta = doc["metadata"];
  meta["tool"] = "deformed-qm";
  meta["version"] = DQM_VERSION;
  meta["subcommand"] = subcommand;
  meta["config"] = {{"beta", cfg.beta},   {"hbar", cfg.hbar}, {"grid_size", cfg.grid_size},
                    {"scheme", cfg.scheme}, {"seed", cfg.seed}, {"format", "json"}};
  meta["criteria"] = json::object();
  for (const auto& [name, ok] : t.criteria) meta["criteria"][name] = ok;
  doc["summary"] = t.summary;
  doc["columns"] = t.columns;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t k = 0; k < row.size(); ++k) obj[t.columns[k]] = json_cell(row[k]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) v[static_cast<std::size_t>(k)] = points == 1 ? lo : lo + (hi - lo) * k / (points - 1);
  return v;
}

// ---- subcommands ----

struct SpectrumArgs {
  std::vector<double> s{0.0};
  int s_samples = 0;
  int r_min = -2;
  int r_max = 2;
};

Table run_spectrum(const RunConfig& cfg, const SpectrumArgs& a) {
  std::vector<double> phases = a.s;
  if (a.s_samples > 0) {
    phases.clear();
    for (int k = 0; k < a.s_samples; ++k) phases.push_back(2.0 * dqm::kPi * k / a.s_samples);
  }
  Table t;
  t.columns = {"r", "v_r", "s", "beta"};
  for (double s : phases) {
    const dqm::ExtensionLabel label(s);
    const auto lat = dqm::extension_spectrum(label, cfg.beta, a.r_min, a.r_max, cfg.hbar);
    for (int r = a.r_min; r <= a.r_max; ++r)
      t.rows.push_back({static_cast<long long>(r), lat.values[static_cast<std::size_t>(r - a.r_min)], label.s(), cfg.beta});
  }
  t.summary = {{"spacing", 2.0 * cfg.hbar * std::sqrt(cfg.beta)}, {"phases", phases.size()}};
  t.line = "spectrum: " + std::to_string(t.rows.size()) + " lattice points, spacing " +
           dqm::format_double(2.0 * cfg.hbar * std::sqrt(cfg.beta));
  return t;
}

struct OverlapArgs {
  double xi = 0.0;
  std::vector<double> delta;
  int points = 161;
  double delta_max = 0.0;
};

Table run_overlap(const RunConfig& cfg, const OverlapArgs& a) {
  if (!(cfg.beta > 0.0)) throw dqm::Error(dqm::ErrorCode::WrongRegime, "overlap needs beta > 0");
  std::vector<double> deltas = a.delta;
  if (deltas.empty()) {
    const double half = a.delta_max > 0.0 ? a.delta_max : 8.0 * std::sqrt(cfg.beta);
    deltas = linspace(-half, half, a.points);
  }
  Table t;
  t.columns = {"delta", "overlap", "overlap_quadrature", "xi", "xi_prime", "beta"};
  double worst = 0.0;
  for (double d : deltas) {
    const double xp = a.xi - d;
    const double closed = dqm::eigenvector_overlap(a.xi, xp, cfg.beta);
    const double quad = dqm::eigenvector_overlap_quadrature(a.xi, xp, cfg.beta);
    worst = std::max(worst, std::abs(closed - quad));
    t.rows.push_back({d, closed, quad, a.xi, xp, cfg.beta});
  }
  t.summary = {{"max_quadrature_deviation", worst}};
  t.criteria.emplace_back("overlap_quadrature_agreement", worst < 1e-10);
  t.line = "overlap: " + std::to_string(t.rows.size()) + " points, max quadrature deviation " +
           dqm::format_double(worst);
  return t;
}

struct EigenArgs {
  std::vector<double> xi{1.0};
  int points = 101;
  std::string form = "scaled";
};

Table run_eigenfunctions(const RunConfig& cfg, const EigenArgs& a) {
  const dqm::ModelParams params(cfg.beta, cfg.hbar);
  if (cfg.beta == 0.0) throw dqm::Error(dqm::ErrorCode::BetaZero, "eigenfunctions need beta != 0");
  const auto form = a.form == "unscaled" ? dqm::ExponentForm::Unscaled : dqm::ExponentForm::Scaled;
  const double half = cfg.beta < 0.0 ? (1.0 - 1e-3) * params.momentum_edge() : 5.0 * params.momentum_edge();
  const auto lambdas = linspace(-half, half, a.points);
  Table t;
  t.columns = {"xi", "lambda", "re_psi", "im_psi", "abs_psi", "ode_residual"};
  double worst = 0.0;
  for (double xi : a.xi) {
    const dqm::EigenfunctionParams ep(xi, cfg.beta, std::nullopt, cfg.hbar);
    for (double l : lambdas) {
      const auto v = dqm::eigenfunction_value(ep, l, form);
      const double res = xi == 0.0 ? 0.0 : dqm::eigen_ode_relative_residual(ep, l, form);
      worst = std::max(worst, res);
      t.rows.push_back({xi, l, v.real(), v.imag(), std::abs(v), res});
    }
  }
  t.summary = {{"form", a.form}, {"max_ode_residual", worst}};
  t.line = "eigenfunctions: " + std::to_string(t.rows.size()) + " samples, max ODE residual " + dqm::format_double(worst);
  return t;
}

Table run_deficiency(const RunConfig& cfg) {
  const dqm::ModelParams params(cfg.beta, cfg.hbar);
  const auto rep = dqm::deficiency_indices(params);
  Table t;
  t.columns = {"probe", "edge", "exponent", "fit_residual", "converged", "divergent", "last_integral"};
  auto add = [&](const char* probe, const char* edge, const dqm::EdgeRecord& e) {
    t.rows.push_back({std::string(probe), std::string(edge), e.exponent, e.fit_residual, e.converged, e.divergent,
                      e.integrals.empty() ? 0.0 : e.integrals.back()});
  };
  add("+i", "left", rep.plus.left);
  add("+i", "right", rep.plus.right);
  add("-i", "left", rep.minus.left);
  add("-i", "right", rep.minus.right);
  t.summary = {{"n_plus", rep.n_plus}, {"n_minus", rep.n_minus}};
  const int expected = cfg.beta > 0.0 ? 1 : 0;
  t.criteria.emplace_back("regime_indices", rep.n_plus == expected && rep.n_minus == expected);
  t.line = "deficiency: (" + std::to_string(rep.n_plus) + "," + std::to_string(rep.n_minus) + ")";
  return t;
}

struct FourierArgs {
  int states = 10;
  double xi_half_width = 200.0;
  double xi_spacing = 0.5;
};

Table run_fourier(const RunConfig& cfg, const FourierArgs& a) {
  const dqm::ModelParams params(cfg.beta, cfg.hbar);
  if (!(cfg.beta < 0.0)) throw dqm::Error(dqm::ErrorCode::WrongRegime, "fourier needs beta < 0");
  const auto grid = dqm::build_grid(params, cfg.grid_size, dqm::Coordinate::Lambda, scheme_of(cfg));
  const auto xi = dqm::uniform_xi_grid(a.xi_half_width, a.xi_spacing);
  dqm::OrthoCompletenessOptions opts;
  opts.test_states = dqm::sample_domain_states(dqm::StateFamily{cfg.seed, a.states}, grid);
  const auto res = dqm::verify_orthocompleteness(params, grid, xi, opts);
  Table t;
  t.columns = {"state", "l2_error"};
  for (std::size_t k = 0; k < res.state_errors.size(); ++k)
    t.rows.push_back({static_cast<long long>(k), res.state_errors[k]});
  t.summary = {{"compl_residual", res.compl_residual},
               {"isometry_defect", res.isometry_defect},
               {"ortho_residual", res.ortho_residual}};
  t.criteria.emplace_back("round_trip", res.compl_residual < 1e-6);
  t.criteria.emplace_back("isometry", res.isometry_defect < 1e-6);
  t.line = "fourier: round-trip error " + dqm::format_double(res.compl_residual) + ", isometry defect " +
           dqm::format_double(res.isometry_defect);
  return t;
}

struct MinimizeArgs {
  std::vector<long long> sizes{128, 256, 512, 1024};
};

Table run_minimize(const RunConfig& cfg, const MinimizeArgs& a) {
  const dqm::ModelParams params(cfg.beta, cfg.hbar);
  if (!(cfg.beta > 0.0)) throw dqm::Error(dqm::ErrorCode::WrongRegime, "minimize needs beta > 0");
  const double dx0 = params.minimal_position_uncertainty();
  Table t;
  t.columns = {"N", "dx_min", "dx0", "relative_excess", "beta"};
  bool ok = true;
  for (long long n : a.sizes) {
    const auto res = dqm::minimal_uncertainty_search(params, n);
    ok = ok && res.dx_min >= dx0 - 1e-9 && res.dx_min <= 1.01 * dx0;
    t.rows.push_back({n, res.dx_min, dx0, res.dx_min / dx0 - 1.0, cfg.beta});
  }
  t.criteria.emplace_back("within_bracket", ok);
  t.line = "minimize: " + std::to_string(t.rows.size()) + " grid sizes, dx0 = " + dqm::format_double(dx0);
  return t;
}

struct FockArgs {
  std::vector<double> q{0.5, 1.0, 2.0};
  long long dim = 16;
  double length = 1.0;
};

Table run_fock(const RunConfig& cfg, const FockArgs& a) {
  using namespace dqm::algebra;
  Table t;
  t.columns = {"q", "dim", "ladder_residual", "ccr_residual"};
  bool ok = true;
  for (double q : a.q) {
    const auto pair = build_q_fock(q, a.dim);
    const auto osc = QOscillatorParams::from_length(q, a.length, cfg.hbar);
    const auto obs = ladder_to_observables(pair, osc);
    const double r5 = static_cast<double>(fock_relation_residual(pair, a.dim - 1));
    const double r7 = static_cast<double>(deformed_commutator_residual(obs.X, obs.P, osc, a.dim - 2));
    ok = ok && r5 < 1e-12 && r7 < 1e-12;
    t.rows.push_back({q, a.dim, r5, r7});
  }
  t.criteria.emplace_back("fock_residuals", ok);
  t.line = std::string("fock: ") + std::to_string(t.rows.size()) + " deformations, residuals " +
           (ok ? "below" : "above") + " 1e-12";
  return t;
}

struct BoundArgs {
  int states = 1000;
};

Table run_bound(const RunConfig& cfg, const BoundArgs& a) {
  const dqm::ModelParams params(cfg.beta, cfg.hbar);
  const auto coord = cfg.beta == 0.0 ? dqm::Coordinate::Lambda : dqm::Coordinate::U;
  const auto grid = dqm::build_grid(params, cfg.grid_size, coord, scheme_of(cfg));
  const auto X = dqm::position_operator(grid, params);
  const auto P = dqm::momentum_operator(grid);
  const auto states = dqm::sample_domain_states(dqm::StateFamily{cfg.seed, a.states}, grid);
  std::vector<dqm::Moments> ms(states.size());
  dqm::parallel_for(states.size(), [&](std::size_t k) { ms[k] = dqm::moments(states[k], X, P, params); });
  Table t;
  t.columns = {"state", "dx", "dp", "robertson_rhs", "slack"};
  double min_slack = HUGE_VAL;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto b = dqm::check_uncertainty_bound(ms[k]);
    min_slack = std::min(min_slack, b.slack);
    t.rows.push_back({static_cast<long long>(k), ms[k].dx, ms[k].dp, ms[k].robertson_rhs, b.slack});
  }
  t.summary = {{"min_slack", ms.empty() ? 0.0 : min_slack}};
  t.criteria.emplace_back("bound_satisfied", ms.empty() || min_slack >= -dqm::kBoundSlackTolerance);
  t.line = "bound: " + std::to_string(ms.size()) + " states, min slack " + dqm::format_double(min_slack);
  return t;
}

struct TransformArgs {
  std::vector<double> q{0.5, 2.0, 3.0};
  double c = 1.0;
  long long dim = 6;
};

Table run_transform(const RunConfig&, const TransformArgs& a) {
  using namespace dqm::algebra;
  Table t;
  t.columns = {"q", "c", "input_residual", "transformed_residual", "uninverted_residual"};
  bool ok = true;
  for (double q : a.q) {
    // B = diag(q^k); the shift part S (superdiagonal ones) commutes q-wise with B.
    RelationPair pair;
    pair.q = q;
    pair.c = a.c;
    pair.valid_block = a.dim;
    pair.B = Matrix::Zero(a.dim, a.dim);
    Matrix binv = Matrix::Zero(a.dim, a.dim);
    for (Index k = 0; k < a.dim; ++k) {
      pair.B(k, k) = std::pow(Real(q), Real(k));
      binv(k, k) = Real(1) / pair.B(k, k);
    }
    pair.A = Complex(Real(a.c) / (Real(1) - Real(q))) * binv;
    for (Index k = 0; k + 1 < a.dim; ++k) pair.A(k, k + 1) += Real(1);
    const double r_in = static_cast<double>(relation_residual(pair));
    const double r_inv = static_cast<double>(relation_residual(transform_inhomogeneous_to_homogeneous(pair)));
    const double r_raw = static_cast<double>(relation_residual(transform_with_uninverted_factor(pair)));
    ok = ok && r_inv < 1e-12;
    t.rows.push_back({q, a.c, r_in, r_inv, r_raw});
  }
  t.criteria.emplace_back("homogeneous_after_transform", ok);
  t.line = std::string("transform: ") + std::to_string(t.rows.size()) + " pairs, inverse-factor transform " +
           (ok ? "homogeneous" : "not homogeneous");
  return t;
}

Table run_verify_all(const RunConfig& cfg) {
  if (cfg.grid_size < 512) throw UsageError("--grid-size: verify-all needs at least 512 nodes");
  dqm::AcceptanceConfig acc;
  acc.seed = cfg.seed;
  acc.grid_size = cfg.grid_size;
  const auto results = dqm::run_acceptance(acc);
  Table t;
  t.columns = {"id", "criterion", "passed", "metric", "tolerance", "detail"};
  int failed = 0;
  std::string failures;
  for (const auto& r : results) {
    t.rows.push_back({static_cast<long long>(r.id), r.name, r.passed, r.metric, r.tolerance, r.detail});
    t.criteria.emplace_back(r.name, r.passed);
    if (!r.passed) {
      ++failed;
      failures += " " + std::to_string(r.id) + ":" + r.name;
    }
  }
  t.summary = {{"passed", results.size() - failed}, {"failed", failed}};
  t.line = failed == 0 ? "verify-all: all " + std::to_string(results.size()) + " criteria passed"
                       : "verify-all: " + std::to_string(failed) + " failed:" + failures;
  return t;
}

int exit_code_for(const dqm::Error& e) {
  switch (e.code()) {
    case dqm::ErrorCode::IntegrationFailure:
    case dqm::ErrorCode::InconclusiveFit:
    case dqm::ErrorCode::NotNormalized:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerics for the deformed commutation relation [x,p] = i hbar (1 + beta p^2)", "deformed-qm"};
  app.set_version_flag("--version", std::string(DQM_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "csv";
  app.add_option("--beta", cfg.beta, "Deformation parameter beta")->capture_default_str();
  app.add_option("--hbar", cfg.hbar, "Reduced Planck constant")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--grid-size", cfg.grid_size, "Number of grid nodes")->capture_default_str()->check(CLI::Range(8LL, 1LL << 20));
  app.add_option("--scheme", cfg.scheme, "Grid scheme")
      ->capture_default_str()
      ->check(CLI::IsMember({"gauss-legendre", "uniform"}));
  app.add_option("--seed", cfg.seed, "Seed for sampled state families")->capture_default_str();
  app.add_option("--format", format, "Output format")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", cfg.output, "Output file ('-' for standard output)")->capture_default_str();

  SpectrumArgs spec_a;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalue lattices of the self-adjoint extensions (beta > 0)");
  spectrum->add_option("--s", spec_a.s, "Extension phases s")->capture_default_str();
  spectrum->add_option("--s-samples", spec_a.s_samples, "Sweep s = 2 pi k / K instead of --s")->check(CLI::PositiveNumber);
  spectrum->add_option("--r-min", spec_a.r_min, "Lowest lattice index")->capture_default_str();
  spectrum->add_option("--r-max", spec_a.r_max, "Highest lattice index")->capture_default_str();

  OverlapArgs ov_a;
  auto* overlap = app.add_subcommand("overlap", "Scalar product of formal position eigenvectors (beta > 0)");
  overlap->add_option("--xi", ov_a.xi, "Reference eigenvalue xi")->capture_default_str();
  overlap->add_option("--delta", ov_a.delta, "Differences xi - xi' (default: a symmetric curve)");
  overlap->add_option("--delta-max", ov_a.delta_max, "Half-width of the curve (default 8 sqrt(beta))");
  overlap->add_option("--points", ov_a.points, "Points on the curve")->capture_default_str()->check(CLI::Range(1, 1000000));

  EigenArgs ef_a;
  auto* eigen = app.add_subcommand("eigenfunctions", "Tabulate position eigenfunctions in momentum space");
  eigen->add_option("--xi", ef_a.xi, "Eigenvalues xi")->capture_default_str();
  eigen->add_option("--points", ef_a.points, "Momentum samples")->capture_default_str()->check(CLI::Range(2, 1000000));
  eigen->add_option("--form", ef_a.form, "Exponent form")
      ->capture_default_str()
      ->check(CLI::IsMember({"scaled", "unscaled"}));

  auto* deficiency = app.add_subcommand("deficiency", "Deficiency indices of the position operator");

  FourierArgs fo_a;
  auto* fourier = app.add_subcommand("fourier", "Generalized Fourier round trip (beta < 0)");
  fourier->add_option("--states", fo_a.states, "Number of test states")->capture_default_str()->check(CLI::Range(1, 100000));
  fourier->add_option("--xi-half-width", fo_a.xi_half_width, "Half-width of the xi-grid")->capture_default_str()->check(CLI::PositiveNumber);
  fourier->add_option("--xi-spacing", fo_a.xi_spacing, "Spacing of the xi-grid")->capture_default_str()->check(CLI::PositiveNumber);

  MinimizeArgs mi_a;
  auto* minimize = app.add_subcommand("minimize", "Variational minimal position uncertainty against N (beta > 0)");
  minimize->add_option("--sizes", mi_a.sizes, "Grid sizes")->capture_default_str()->check(CLI::Range(128LL, 1LL << 16));

  FockArgs fk_a;
  auto* fock = app.add_subcommand("fock", "q-oscillator Fock representation residuals");
  fock->add_option("--q", fk_a.q, "Deformations q")->capture_default_str()->check(CLI::PositiveNumber);
  fock->add_option("--dim", fk_a.dim, "Truncation dimension")->capture_default_str()->check(CLI::Range(3LL, 4096LL));
  fock->add_option("--length", fk_a.length, "Length scale L")->capture_default_str()->check(CLI::PositiveNumber);

  BoundArgs bo_a;
  auto* bound = app.add_subcommand("bound", "Uncertainty-relation slack over sampled states");
  bound->add_option("--states", bo_a.states, "Number of sampled states")->capture_default_str()->check(CLI::Range(0, 10000000));

  TransformArgs tr_a;
  auto* transform = app.add_subcommand("transform", "Inhomogeneous to homogeneous q-relation transform");
  transform->add_option("--q", tr_a.q, "Deformations q (q != 1)")->capture_default_str()->check(CLI::PositiveNumber);
  transform->add_option("--c", tr_a.c, "Inhomogeneity")->capture_default_str();
  transform->add_option("--dim", tr_a.dim, "Matrix size")->capture_default_str()->check(CLI::Range(1LL, 512LL));

  auto* verify = app.add_subcommand("verify-all", "Run the full acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  cfg.format = format == "json" ? Format::Json : Format::Csv;

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  Table table;
  try {
    if (chosen == spectrum) table = run_spectrum(cfg, spec_a);
    else if (chosen == overlap) table = run_overlap(cfg, ov_a);
    else if (chosen == eigen) table = run_eigenfunctions(cfg, ef_a);
    else if (chosen == deficiency) table = run_deficiency(cfg);
    else if (chosen == fourier) table = run_fourier(cfg, fo_a);
    else if (chosen == minimize) table = run_minimize(cfg, mi_a);
    else if (chosen == fock) table = run_fock(cfg, fk_a);
    else if (chosen == bound) table = run_bound(cfg, bo_a);
    else if (chosen == transform) table = run_transform(cfg, tr_a);
    else if (chosen == verify) table = run_verify_all(cfg);
  } catch (const UsageError& e) {
    std::cerr << "deformed-qm " << name << ": " << e.what() << "\n";
    return 1;
  } catch (const dqm::Error& e) {
    std::cerr << "deformed-qm " << name << ": " << e.what() << "\n";
    return exit_code_for(e);
  }

  const std::string text = render(table, cfg, name);
  std::ostream* summary = &std::cout;
  if (cfg.output == "-") {
    std::cout << text;
    summary = &std::cerr;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
      std::cerr << "deformed-qm: --output: cannot open " << cfg.output << "\n";
      return 1;
    }
    out << text;
  }
  *summary << table.line << "\n";

  bool all_ok = true;
  for (const auto& [criterion, ok] : table.criteria) {
    if (!ok) {
      all_ok = false;
      std::cerr << "FAILED " << criterion << "\n";
    }
  }
  return all_ok ? 0 : 2;
}
