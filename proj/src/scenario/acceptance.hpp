// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace liedrag {

struct CheckLine {
  std::string label;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string relation = "<=";   // how measured compares with threshold
};

struct CriterionReport {
  std::string id;
  std::string title;
  std::vector<CheckLine> checks;
  double seconds = 0.0;
  std::string error;   // set when the criterion could not be evaluated

  bool passed() const;
};

struct AcceptanceOptions {
  /// Negative control: "<law>_flux_sign" flips that law's flux before its
  /// residual is taken (nl1, gch1, gv21), "crossh7_source_sign" flips the
  /// cross-helicity source.
  std::string mutation;
};

/// Criterion ids A1..A10 with short titles.
const std::vector<std::pair<std::string, std::string>>& acceptance_criteria();
const std::vector<std::string>& acceptance_mutations();

/// Evaluate the named criteria ("all" or empty for every one). Scenario runs
/// are shared between criteria. on_done is called as each criterion finishes.
std::vector<CriterionReport> run_acceptance(const std::vector<std::string>& ids, const AcceptanceOptions& opts = {},
                                            const std::function<void(const CriterionReport&)>& on_done = {});

}  // namespace liedrag
