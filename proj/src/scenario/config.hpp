// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "dynamics/state.hpp"

namespace liedrag {

/// Analytic profile name plus amplitude for one Clebsch potential.
struct Profile {
  std::string shape = "zero";
  double amp = 0.0;

  bool operator==(const Profile&) const = default;
};

struct ClebschInit {
  Profile phi0;
  Profile r0;
  Profile lambda0;
  Profile mu0;
  Profile Gamma0;

  bool operator==(const ClebschInit&) const = default;
};

struct ScenarioConfig {
  Index3 n{32, 32, 32};
  Vec3 length{Grid::kTwoPi, Grid::kTwoPi, Grid::kTwoPi};
  MhdParams params;

  std::string init = "static_gas";
  std::string rho_mode = "uniform";   // uniform | isobaric | balanced
  std::map<std::string, double> init_params;
  ClebschInit clebsch;

  double t_end = 1.0;
  double cfl = 0.25;
  double dt = 0.0;                // > 0: fixed step
  double observer_every = 0.1;

  int particle_count = 0;
  std::uint64_t particle_seed = 1;
  std::vector<std::string> particle_diagnostics;

  std::string phi = "1";          // polynomial for the generalized integrals
  double gv_floor = 1e-6;
  double gv_tolerance = 1e-6;

  std::string output_dir = "out";
  bool dump_fields = false;
  double dump_every = 0.0;        // 0: final state only

  Grid grid() const { return Grid(n, length); }
  bool operator==(const ScenarioConfig&) const = default;
};

/// Defaults for a recipe, including its Clebsch data. Throws for unknown names.
ScenarioConfig default_config(const std::string& init);

/// Parse a flat JSON object with dotted keys. Unknown keys, wrong types and
/// unknown recipe names are config errors naming the key.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config(const std::string& path);

/// Every key, recipe defaults resolved, sorted; parse(serialize(c)) == c.
std::string serialize_config(const ScenarioConfig& cfg);

/// Documented key schema as JSON text.
std::string config_schema();

}  // namespace liedrag
