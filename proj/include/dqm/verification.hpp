#pragma once

// The acceptance criteria as executable checks. Each returns a pass flag, a
// scalar metric compared against a pinned tolerance, and a deterministic
// detail string (no timings), so two runs with the same configuration
// produce identical results.

#include <cstdint>
#include <string>
#include <vector>

#include "dqm/params.hpp"

namespace dqm {

struct AcceptanceConfig {
  std::uint64_t seed = 7;
  Index grid_size = 512;  ///< grid for the variational and transform criteria (>= 512)
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double metric = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

CriterionResult check_overlap_formula(const AcceptanceConfig& cfg);
CriterionResult check_extension_spectra(const AcceptanceConfig& cfg);
CriterionResult check_lattice_orthonormality(const AcceptanceConfig& cfg);
CriterionResult check_minimal_uncertainty(const AcceptanceConfig& cfg);
CriterionResult check_deficiency_classification(const AcceptanceConfig& cfg);
CriterionResult check_fourier_round_trip(const AcceptanceConfig& cfg);
CriterionResult check_eigenfunction_oracle(const AcceptanceConfig& cfg);
CriterionResult check_fock_algebra(const AcceptanceConfig& cfg);
CriterionResult check_uncertainty_bound(const AcceptanceConfig& cfg);
CriterionResult check_finite_representations(const AcceptanceConfig& cfg);
CriterionResult check_extension_domain_agreement(const AcceptanceConfig& cfg);

/// Criteria 1-11 in order.
std::vector<CriterionResult> run_numeric_criteria(const AcceptanceConfig& cfg);

/// Re-runs criteria 1-11 and compares every field bit for bit with `first`.
CriterionResult check_determinism(const AcceptanceConfig& cfg, const std::vector<CriterionResult>& first);

/// All twelve criteria.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace dqm
