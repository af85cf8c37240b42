// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lagrangian/particles.hpp"
#include "scenario/config.hpp"

namespace liedrag {

/// Analytic part of an initial condition, before the Clebsch potentials are
/// added to the velocity.
struct RecipeFields {
  VectorField u;
  OneForm Atilde;
  ScalarField S;
};

struct Recipe {
  std::string name;
  std::string summary;
  std::map<std::string, double> params;   // every accepted init.* key with its default
  ClebschInit clebsch;
  std::string rho_mode = "uniform";
  std::function<RecipeFields(const Grid&, const std::map<std::string, double>&)> fields;
  double p0 = 1.0;   // default eos.p0; the balanced pressure must stay positive
};

const std::vector<Recipe>& recipes();
/// Throws a config error listing the available names.
const Recipe& find_recipe(const std::string& name);

/// Names accepted for the scalar potentials and for Gamma0.
const std::vector<std::string>& scalar_profiles();
const std::vector<std::string>& gamma_profiles();
ScalarField scalar_profile(const Grid& g, const Profile& p);
OneForm gamma_profile(const Grid& g, const Profile& p);

/// u0 = u_direct + grad phi0 - r0 grad S0 - lt0 grad mu0 + u_M0, B0 = d1(A0), and
/// rho according to rho_mode. "solenoidal" phi0 removes the divergence of the
/// remaining velocity.
MhdState build_initial_state(const ScenarioConfig& cfg);

/// Tracer diagnostics: S, I_e, ab_rho, I_e_m, I_h, I_h_m, hf12.
const std::vector<std::string>& particle_diagnostic_names();
ParticleSet seed_scenario_particles(const MhdState& s, const ScenarioConfig& cfg);
/// Extra integrands the named diagnostics need along trajectories.
std::vector<Integrand> particle_integrands(const std::vector<std::string>& diagnostics);
/// Current per-particle value of a diagnostic, comparable to its t=0 sample.
std::vector<double> particle_values(const MhdState& s, const ParticleSet& p, const std::string& name);

}  // namespace liedrag
