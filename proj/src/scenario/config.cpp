// SPDX-License-Identifier: Apache-2.0

#include "scenario/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "invariants/invariants.hpp"
#include "json.hpp"
#include "scenario/recipes.hpp"

namespace liedrag {

namespace {

using nlohmann::json;

[[noreturn]] void key_error(const std::string& key, const std::string& what) {
  fail(ErrorKind::kConfig, key + ": " + what);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) key_error(key, "expected a number");
  return v.get<double>();
}

long long integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) key_error(key, "expected an integer");
  return v.get<long long>();
}

std::string text(const json& v, const std::string& key) {
  if (!v.is_string()) key_error(key, "expected a string");
  return v.get<std::string>();
}

bool boolean(const json& v, const std::string& key) {
  if (!v.is_boolean()) key_error(key, "expected true or false");
  return v.get<bool>();
}

/// One number for all axes or a list of three.
template <class T, class F>
std::array<T, 3> triple(const json& v, const std::string& key, F&& scalar) {
  if (v.is_array()) {
    if (v.size() != 3) key_error(key, "expected one value or a list of three");
    return {scalar(v[0], key), scalar(v[1], key), scalar(v[2], key)};
  }
  const T x = scalar(v, key);
  return {x, x, x};
}

struct ProfileKey {
  const char* name;
  Profile ClebschInit::*member;
};

constexpr ProfileKey kProfiles[] = {{"phi0", &ClebschInit::phi0},
                                    {"r0", &ClebschInit::r0},
                                    {"lambda0", &ClebschInit::lambda0},
                                    {"mu0", &ClebschInit::mu0},
                                    {"Gamma0", &ClebschInit::Gamma0}};

void check_profile(const std::string& which, const std::string& shape) {
  const auto& names = which == "Gamma0" ? gamma_profiles() : scalar_profiles();
  const bool ok = std::find(names.begin(), names.end(), shape) != names.end() ||
                  (which == "phi0" && shape == "solenoidal");
  if (!ok) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    if (which == "phi0") list += ", solenoidal";
    key_error("clebsch." + which, "unknown profile '" + shape + "' (available: " + list + ")");
  }
}

void validate(const ScenarioConfig& c) {
  for (int a = 0; a < 3; ++a) {
    if (c.n[a] < 8 || c.n[a] % 2 != 0) key_error("grid.n", "each size must be even and at least 8");
    if (!(c.length[a] > 0.0)) key_error("grid.length", "must be positive");
  }
  if (!(c.params.eos.gamma > 1.0)) key_error("eos.gamma", "must exceed 1");
  if (!(c.params.eos.rho0 > 0.0)) key_error("eos.rho0", "must be positive");
  if (!(c.params.eos.p0 > 0.0)) key_error("eos.p0", "must be positive");
  if (!(c.params.eos.cv > 0.0)) key_error("eos.cv", "must be positive");
  if (!std::isfinite(c.params.eos.S0)) key_error("eos.S0", "must be finite");
  if (!(c.params.mu0 > 0.0)) key_error("eos.mu0", "must be positive");
  const Recipe& r = find_recipe(c.init);
  for (const auto& [k, v] : c.init_params) {
    if (!r.params.count(k)) key_error("init." + k, "not a parameter of recipe '" + c.init + "'");
    if (!std::isfinite(v)) key_error("init." + k, "must be finite");
  }
  if (c.rho_mode != "uniform" && c.rho_mode != "isobaric" && c.rho_mode != "balanced") {
    key_error("init.rho_mode", "expected uniform, isobaric or balanced");
  }
  for (const ProfileKey& pk : kProfiles) check_profile(pk.name, (c.clebsch.*pk.member).shape);
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) key_error("run.t_end", "must be non-negative");
  if (!(c.dt >= 0.0)) key_error("run.dt", "must be non-negative");
  if (c.dt == 0.0 && !(c.cfl > 0.0 && c.cfl < 1.0)) key_error("run.cfl", "must lie in (0, 1) unless run.dt is set");
  if (!(c.observer_every > 0.0)) key_error("run.observer_every", "must be positive");
  if (c.particle_count < 0) key_error("particles.count", "must be non-negative");
  const auto& known = particle_diagnostic_names();
  for (const auto& d : c.particle_diagnostics) {
    if (std::find(known.begin(), known.end(), d) == known.end()) {
      key_error("particles.diagnostics", "unknown diagnostic '" + d + "'");
    }
  }
  try {
    Polynomial::parse(c.phi);
  } catch (const Error& e) {
    key_error("diagnostics.phi", e.what());
  }
  if (!(c.gv_floor > 0.0)) key_error("diagnostics.gv_floor", "must be positive");
  if (!(c.gv_tolerance > 0.0)) key_error("diagnostics.gv_tolerance", "must be positive");
  if (c.output_dir.empty()) key_error("output.dir", "must not be empty");
  if (!(c.dump_every >= 0.0)) key_error("output.dump_every", "must be non-negative");
}

}  // namespace

ScenarioConfig default_config(const std::string& init) {
  const Recipe& r = find_recipe(init);
  ScenarioConfig c;
  c.init = r.name;
  c.init_params = r.params;
  c.clebsch = r.clebsch;
  c.rho_mode = r.rho_mode;
  c.params.eos.p0 = r.p0;
  return c;
}

ScenarioConfig parse_config_text(const std::string& body) {
  json doc;
  try {
    doc = json::parse(body, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::kConfig, "config must be an object of dotted keys");
  const std::string init = doc.contains("init.name") ? text(doc["init.name"], "init.name") : "static_gas";
  ScenarioConfig c = default_config(init);

  for (const auto& [key, v] : doc.items()) {
    if (key == "init.name") continue;
    if (key == "grid.n") {
      c.n = triple<int>(v, key, [](const json& x, const std::string& k) { return static_cast<int>(integer(x, k)); });
    } else if (key == "grid.length") {
      c.length = triple<double>(v, key, number);
    } else if (key == "eos.gamma") {
      c.params.eos.gamma = number(v, key);
    } else if (key == "eos.rho0") {
      c.params.eos.rho0 = number(v, key);
    } else if (key == "eos.p0") {
      c.params.eos.p0 = number(v, key);
    } else if (key == "eos.cv") {
      c.params.eos.cv = number(v, key);
    } else if (key == "eos.S0") {
      c.params.eos.S0 = number(v, key);
    } else if (key == "eos.mu0") {
      c.params.mu0 = number(v, key);
    } else if (key == "init.rho_mode") {
      c.rho_mode = text(v, key);
    } else if (key.rfind("init.", 0) == 0) {
      const std::string p = key.substr(5);
      if (!c.init_params.count(p)) key_error(key, "unknown key; not a parameter of recipe '" + init + "'");
      c.init_params[p] = number(v, key);
    } else if (key == "run.t_end") {
      c.t_end = number(v, key);
    } else if (key == "run.cfl") {
      c.cfl = number(v, key);
    } else if (key == "run.dt") {
      c.dt = number(v, key);
    } else if (key == "run.observer_every") {
      c.observer_every = number(v, key);
    } else if (key == "particles.count") {
      c.particle_count = static_cast<int>(integer(v, key));
    } else if (key == "particles.seed") {
      const long long s = integer(v, key);
      if (s < 0) key_error(key, "must be non-negative");
      c.particle_seed = static_cast<std::uint64_t>(s);
    } else if (key == "particles.diagnostics") {
      if (!v.is_array()) key_error(key, "expected a list of names");
      c.particle_diagnostics.clear();
      for (const json& d : v) c.particle_diagnostics.push_back(text(d, key));
    } else if (key == "diagnostics.phi") {
      c.phi = text(v, key);
    } else if (key == "diagnostics.gv_floor") {
      c.gv_floor = number(v, key);
    } else if (key == "diagnostics.gv_tolerance") {
      c.gv_tolerance = number(v, key);
    } else if (key == "output.dir") {
      c.output_dir = text(v, key);
    } else if (key == "output.dump_fields") {
      c.dump_fields = boolean(v, key);
    } else if (key == "output.dump_every") {
      c.dump_every = number(v, key);
    } else {
      bool matched = false;
      for (const ProfileKey& pk : kProfiles) {
        const std::string base = std::string("clebsch.") + pk.name;
        if (key == base) {
          (c.clebsch.*pk.member).shape = text(v, key);
          matched = true;
        } else if (key == base + "_amp") {
          (c.clebsch.*pk.member).amp = number(v, key);
          matched = true;
        }
      }
      if (!matched) key_error(key, "unknown key");
    }
  }
  validate(c);
  return c;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_text(os.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  json doc = json::object();
  doc["grid.n"] = {c.n[0], c.n[1], c.n[2]};
  doc["grid.length"] = {c.length[0], c.length[1], c.length[2]};
  doc["eos.gamma"] = c.params.eos.gamma;
  doc["eos.rho0"] = c.params.eos.rho0;
  doc["eos.p0"] = c.params.eos.p0;
  doc["eos.cv"] = c.params.eos.cv;
  doc["eos.S0"] = c.params.eos.S0;
  doc["eos.mu0"] = c.params.mu0;
  doc["init.name"] = c.init;
  doc["init.rho_mode"] = c.rho_mode;
  for (const auto& [k, v] : c.init_params) doc["init." + k] = v;
  for (const ProfileKey& pk : kProfiles) {
    const std::string base = std::string("clebsch.") + pk.name;
    doc[base] = (c.clebsch.*pk.member).shape;
    doc[base + "_amp"] = (c.clebsch.*pk.member).amp;
  }
  doc["run.t_end"] = c.t_end;
  doc["run.cfl"] = c.cfl;
  doc["run.dt"] = c.dt;
  doc["run.observer_every"] = c.observer_every;
  doc["particles.count"] = c.particle_count;
  doc["particles.seed"] = c.particle_seed;
  doc["particles.diagnostics"] = c.particle_diagnostics;
  doc["diagnostics.phi"] = c.phi;
  doc["diagnostics.gv_floor"] = c.gv_floor;
  doc["diagnostics.gv_tolerance"] = c.gv_tolerance;
  doc["output.dir"] = c.output_dir;
  doc["output.dump_fields"] = c.dump_fields;
  doc["output.dump_every"] = c.dump_every;
  return doc.dump(2) + "\n";   // keys come out sorted
}

std::string config_schema() {
  json s = json::object();
  auto key = [&](const char* k, const char* type, const json& def, const char* doc) {
    s[k] = {{"type", type}, {"default", def}, {"doc", doc}};
  };
  const ScenarioConfig d;
  key("grid.n", "int or [int, int, int]", {32, 32, 32}, "grid points per axis, even and >= 8");
  key("grid.length", "number or [number x3]", {d.length[0], d.length[1], d.length[2]}, "box edge lengths");
  key("eos.gamma", "number", d.params.eos.gamma, "adiabatic index");
  key("eos.rho0", "number", d.params.eos.rho0, "reference density");
  key("eos.p0", "number", "per recipe", "pressure at rho0 and S0; see list-inits for recipe defaults");
  key("eos.cv", "number", d.params.eos.cv, "specific heat at constant volume");
  key("eos.S0", "number", d.params.eos.S0, "reference entropy");
  key("eos.mu0", "number", d.params.mu0, "magnetic permeability");
  json names = json::array();
  for (const Recipe& r : recipes()) names.push_back(r.name);
  key("init.name", "string", d.init, "initial-condition recipe; see list-inits");
  s["init.name"]["values"] = names;
  key("init.rho_mode", "string", "per recipe",
      "uniform: rho0; isobaric: p = p0; balanced: pressure solves the incompressible Poisson problem");
  key("init.<param>", "number", "per recipe", "recipe parameter; see list-inits");
  for (const ProfileKey& pk : kProfiles) {
    const std::string base = std::string("clebsch.") + pk.name;
    json values = json(std::string(pk.name) == "Gamma0" ? gamma_profiles() : scalar_profiles());
    if (std::string(pk.name) == "phi0") values.push_back("solenoidal");
    s[base] = {{"type", "string"}, {"default", "per recipe"}, {"values", values}, {"doc", "initial profile"}};
    s[base + "_amp"] = {{"type", "number"}, {"default", "per recipe"}, {"doc", "profile amplitude"}};
  }
  key("run.t_end", "number", d.t_end, "final time");
  key("run.cfl", "number", d.cfl, "CFL number in (0, 1)");
  key("run.dt", "number", d.dt, "fixed step; 0 selects the CFL step");
  key("run.observer_every", "number", d.observer_every, "diagnostic interval");
  key("particles.count", "int", d.particle_count, "number of tracers");
  key("particles.seed", "int", d.particle_seed, "tracer seeding seed");
  key("particles.diagnostics", "[string]", json::array(), "tracer diagnostics");
  s["particles.diagnostics"]["values"] = particle_diagnostic_names();
  key("diagnostics.phi", "string", d.phi, "polynomial in ab_rho, S, b_grad_ab, b_grad_ib");
  key("diagnostics.gv_floor", "number", d.gv_floor, "minimum |A| for the Godbillon-Vey diagnostics");
  key("diagnostics.gv_tolerance", "number", d.gv_tolerance, "integrability defect above which GV is undefined");
  key("output.dir", "string", d.output_dir, "output directory");
  key("output.dump_fields", "bool", d.dump_fields, "write raw field dumps");
  key("output.dump_every", "number", d.dump_every, "dump interval; 0 dumps the final state only");
  return s.dump(2) + "\n";
}

}  // namespace liedrag
