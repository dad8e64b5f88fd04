#pragma once

// The twelve acceptance criteria as runnable checks, shared by the CLI
// `verify` subcommand and the acceptance test binary.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tracemetric::verify {

struct Config {
  std::vector<std::size_t> orders;  // empty: the criterion's own default set
  std::optional<std::size_t> p;     // restrict the signature where one is swept
  std::uint64_t seed = 1;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::vector<std::string> details;
  double seconds = 0.0;  // wall time, never printed by the CLI
};

CriterionResult scalar_curvature(const Config& cfg);        // 1
CriterionResult einstein_property(const Config& cfg);       // 2
CriterionResult slp2_sectional(const Config& cfg);          // 3
CriterionResult nonpositive_sectional(const Config& cfg);   // 4
CriterionResult geodesic_ode_agreement(const Config& cfg);  // 5
CriterionResult riemann_vs_oracle(const Config& cfg);       // 6
CriterionResult distance_axioms(const Config& cfg);         // 7
CriterionResult product_decomposition(const Config& cfg);   // 8
CriterionResult geodesic_symmetry(const Config& cfg);       // 9
CriterionResult identify_round_trip(const Config& cfg);     // 10
CriterionResult foliation(const Config& cfg);               // 11
CriterionResult trace_inequality(const Config& cfg);        // 12

/// Criterion ids per suite: metric, geodesic, curvature, isometry, oracle, all.
std::vector<int> suite_criteria(const std::string& suite);
std::vector<std::string> suite_names();

CriterionResult run_criterion(int id, const Config& cfg);

/// Runs the criteria on up to `jobs` threads; results keep the order of ids.
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const Config& cfg, unsigned jobs);

/// One line "PASS|FAIL C<id> <name>: measured=<v> threshold=<v>" plus details.
std::string format_result(const CriterionResult& r, bool with_timing);

}  // namespace tracemetric::verify
