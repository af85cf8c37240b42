// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "invariants/invariants.hpp"
#include "scenario/config.hpp"

namespace liedrag {

constexpr int kDiagnosticsSchemaVersion = 1;

/// diagnostics.csv header: t, integrals, then residual norms (suffix _res_L2).
const std::vector<std::string>& diagnostic_columns();

/// Everything one observation contributes: the integral columns plus the laws
/// and advected forms whose residuals need neighbouring snapshots.
struct Observation {
  double t = 0.0;
  std::map<std::string, double> values;
  std::map<std::string, ConsLaw> laws;
  std::map<std::string, FormField> forms;
  VectorField u;
};

Observation observe_state(const MhdState& s, const ScenarioConfig& cfg);

/// Residual columns for the middle of three equally spaced observations; nan
/// where a law does not apply.
std::map<std::string, double> residual_columns(const Observation& prev, const Observation& mid,
                                               const Observation& next, double dt_obs);

struct RunReport {
  bool blowup = false;
  double last_valid_time = 0.0;
  std::string message;
  int rows = 0;
  std::vector<std::string> files;   // relative to the output directory
};

/// Runs a scenario and writes diagnostics.csv, particles.csv, optional field
/// dumps and manifest.json into cfg.output_dir. A blowup is reported, not
/// thrown; outputs written up to the last valid time are kept.
RunReport run_scenario(const ScenarioConfig& cfg);

/// Little-endian float64 payload per component plus a JSON sidecar header.
/// Returns the written file names relative to dir.
std::vector<std::string> dump_fields(const MhdState& s, const std::string& dir, const std::string& stem);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

}  // namespace liedrag
