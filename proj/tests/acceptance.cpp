// Acceptance driver: one PASS/FAIL line per criterion.
//
// Usage: dqm_acceptance [path-to-deformed-qm]
// With a CLI path, criterion 12 additionally runs `verify-all` twice and
// compares the two JSON outputs byte for byte.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include "dqm/verification.hpp"

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool cli_runs_identical(const std::string& cli, std::string& detail) {
  const auto dir = std::filesystem::temp_directory_path() / "dqm_acceptance";
  std::filesystem::create_directories(dir);
  const auto a = dir / "run_a.json";
  const auto b = dir / "run_b.json";
  for (const auto& out : {a, b}) {
    const std::string cmd = "\"" + cli + "\" verify-all --beta 1 --grid-size 512 --seed 7 --format json --output \"" +
                            out.string() + "\"";
    if (std::system(cmd.c_str()) != 0) {
      detail = "CLI invocation failed";
      return false;
    }
  }
  const bool same = slurp(a) == slurp(b) && !slurp(a).empty();
  detail = same ? "CLI outputs byte-identical" : "CLI outputs differ";
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  dqm::AcceptanceConfig cfg;
  auto results = dqm::run_acceptance(cfg);
  if (argc > 1) {
    std::string detail;
    const bool same = cli_runs_identical(argv[1], detail);
    auto& det = results.back();
    det.passed = det.passed && same;
    det.detail += "; " + detail;
  }
  int failures = 0;
  for (const auto& r : results) {
    if (!r.passed) ++failures;
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " " << r.name
              << " metric=" << dqm::format_double(r.metric) << " tol=" << dqm::format_double(r.tolerance) << " : "
              << r.detail << "\n";
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}
