// SPDX-License-Identifier: Apache-2.0

#include "liedrag/liedrag.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "dynamics/integrator.hpp"
#include "grid_calculus/spectral.hpp"
#include "json.hpp"
#include "scenario/acceptance.hpp"
#include "scenario/config.hpp"
#include "scenario/recipes.hpp"
#include "scenario/runner.hpp"

struct liedrag_config {
  liedrag::ScenarioConfig cfg;
};

struct liedrag_state {
  liedrag::ScenarioConfig cfg;
  liedrag::MhdState state;
};

namespace {

thread_local std::string g_last_error;

liedrag_status status_of(liedrag::ErrorKind k) {
  switch (k) {
    case liedrag::ErrorKind::kConfig: return LIEDRAG_ERR_CONFIG;
    case liedrag::ErrorKind::kDomain: return LIEDRAG_ERR_DOMAIN;
    case liedrag::ErrorKind::kGridMismatch: return LIEDRAG_ERR_GRID_MISMATCH;
    case liedrag::ErrorKind::kBlowup: return LIEDRAG_ERR_BLOWUP;
    case liedrag::ErrorKind::kIo: return LIEDRAG_ERR_IO;
    case liedrag::ErrorKind::kInternal: return LIEDRAG_ERR_INTERNAL;
  }
  return LIEDRAG_ERR_INTERNAL;
}

/// Runs f, translating exceptions into status codes and the thread-local message.
template <class F>
liedrag_status guard(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const liedrag::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LIEDRAG_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LIEDRAG_ERR_INTERNAL;
  }
}

liedrag_status bad_argument(const char* what) {
  g_last_error = what;
  return LIEDRAG_ERR_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const liedrag::Array* field_by_name(const liedrag::MhdState& s, const std::string& name) {
  if (name == "rho") return &s.rho.values;
  if (name == "S") return &s.S.values;
  if (name == "phi") return &s.phi.values;
  if (name == "r") return &s.r.values;
  if (name == "lambda_tilde") return &s.lambda_tilde.values;
  if (name == "mu") return &s.mu.values;
  const auto us = name.rfind('_');
  if (us == std::string::npos || us + 2 != name.size()) return nullptr;
  const char axis = name.back();
  if (axis < 'x' || axis > 'z') return nullptr;
  const int a = axis - 'x';
  const std::string base = name.substr(0, us);
  if (base == "u") return &s.u.c[a];
  if (base == "B") return &s.B.c[a];
  if (base == "Atilde") return &s.Atilde.c[a];
  if (base == "Gamma") return &s.Gamma.c[a];
  return nullptr;
}

}  // namespace

extern "C" {

const char* liedrag_version(void) { return LIEDRAG_VERSION; }

const char* liedrag_status_name(liedrag_status status) {
  switch (status) {
    case LIEDRAG_OK: return "ok";
    case LIEDRAG_ERR_CONFIG: return "config error";
    case LIEDRAG_ERR_DOMAIN: return "domain error";
    case LIEDRAG_ERR_GRID_MISMATCH: return "grid mismatch";
    case LIEDRAG_ERR_BLOWUP: return "numerical blowup";
    case LIEDRAG_ERR_IO: return "i/o error";
    case LIEDRAG_ERR_INTERNAL: return "internal error";
    case LIEDRAG_ERR_ARGUMENT: return "invalid argument";
  }
  return "unknown status";
}

const char* liedrag_last_error(void) { return g_last_error.c_str(); }

void liedrag_string_free(char* s) { delete[] s; }

liedrag_status liedrag_set_threads(int n) {
  if (n < 1) return bad_argument("thread count must be at least 1");
  liedrag::set_thread_count(n);
  return LIEDRAG_OK;
}

liedrag_status liedrag_config_load(const char* path, liedrag_config** out) {
  if (!path || !out) return bad_argument("null argument");
  return guard([&] {
    *out = new liedrag_config{liedrag::parse_config(path)};
    return LIEDRAG_OK;
  });
}

liedrag_status liedrag_config_parse(const char* text, liedrag_config** out) {
  if (!text || !out) return bad_argument("null argument");
  return guard([&] {
    *out = new liedrag_config{liedrag::parse_config_text(text)};
    return LIEDRAG_OK;
  });
}

liedrag_status liedrag_config_default(const char* init_name, liedrag_config** out) {
  if (!init_name || !out) return bad_argument("null argument");
  return guard([&] {
    *out = new liedrag_config{liedrag::default_config(init_name)};
    return LIEDRAG_OK;
  });
}

liedrag_status liedrag_config_set(liedrag_config* cfg, const char* key, const char* json_value) {
  if (!cfg || !key || !json_value) return bad_argument("null argument");
  return guard([&] {
    nlohmann::json doc = nlohmann::json::parse(liedrag::serialize_config(cfg->cfg));
    nlohmann::json value;
    try {
      value = nlohmann::json::parse(json_value);
    } catch (const nlohmann::json::parse_error&) {
      liedrag::fail(liedrag::ErrorKind::kConfig, std::string(key) + ": value is not valid JSON");
    }
    const std::string k = key;
    if (k == "init.name") {
      // A new recipe brings its own parameters and Clebsch defaults.
      for (auto it = doc.begin(); it != doc.end();) {
        const std::string name = it.key();
        it = (name.rfind("init.", 0) == 0 || name.rfind("clebsch.", 0) == 0) ? doc.erase(it) : std::next(it);
      }
    }
    doc[k] = value;
    cfg->cfg = liedrag::parse_config_text(doc.dump());
    return LIEDRAG_OK;
  });
}

liedrag_status liedrag_config_serialize(const liedrag_config* cfg, char** out) {
  if (!cfg || !out) return bad_argument("null argument");
  return guard([&] {
    *out = copy_string(liedrag::serialize_config(cfg->cfg));
    return LIEDRAG_OK;
  });
}

void liedrag_config_free(liedrag_config* cfg) { delete cfg; }

liedrag_status liedrag_schema(char** out) {
  if (!out) return bad_argument("null argument");
  return guard([&] {
    nlohmann::json doc;
    doc["config"] = nlohmann::json::parse(liedrag::config_schema());
    doc["diagnostics_csv"] = {{"schema_version", liedrag::kDiagnosticsSchemaVersion},
                              {"columns", liedrag::diagnostic_columns()},
                              {"missing_value", "nan"}};
    *out = copy_string(doc.dump(2) + "\n");
    return LIEDRAG_OK;
  });
}

liedrag_status liedrag_list_inits(char** out) {
  if (!out) return bad_argument("null argument");
  return guard([&] {
    nlohmann::json doc = nlohmann::json::array();
    for (const liedrag::Recipe& r : liedrag::recipes()) {
      nlohmann::json clebsch;
      const std::pair<const char*, const liedrag::Profile*> profiles[] = {{"phi0", &r.clebsch.phi0},
                                                                          {"r0", &r.clebsch.r0},
                                                                          {"lambda0", &r.clebsch.lambda0},
                                                                          {"mu0", &r.clebsch.mu0},
                                                                          {"Gamma0", &r.clebsch.Gamma0}};
      for (const auto& [k, p] : profiles) clebsch[k] = {{"shape", p->shape}, {"amp", p->amp}};
      doc.push_back({{"name", r.name},
                     {"summary", r.summary},
                     {"rho_mode", r.rho_mode},
                     {"p0", r.p0},
                     {"params", r.params},
                     {"clebsch", clebsch}});
    }
    *out = copy_string(doc.dump(2) + "\n");
    return LIEDRAG_OK;
  });
}

liedrag_status liedrag_run(const liedrag_config* cfg, double* last_valid_time) {
  if (!cfg) return bad_argument("null argument");
  return guard([&] {
    const liedrag::RunReport r = liedrag::run_scenario(cfg->cfg);
    if (last_valid_time) *last_valid_time = r.last_valid_time;
    if (r.blowup) {
      g_last_error = r.message;
      return LIEDRAG_ERR_BLOWUP;
    }
    return LIEDRAG_OK;
  });
}

liedrag_status liedrag_state_create(const liedrag_config* cfg, liedrag_state** out) {
  if (!cfg || !out) return bad_argument("null argument");
  return guard([&] {
    *out = new liedrag_state{cfg->cfg, liedrag::build_initial_state(cfg->cfg)};
    return LIEDRAG_OK;
  });
}

liedrag_status liedrag_state_advance(liedrag_state* state, double t) {
  if (!state) return bad_argument("null argument");
  return guard([&] {
    liedrag::RunOptions opts;
    opts.t_end = t;
    opts.cfl = state->cfg.cfl;
    opts.fixed_dt = state->cfg.dt;
    state->state = liedrag::run(state->state, opts);
    return LIEDRAG_OK;
  });
}

double liedrag_state_time(const liedrag_state* state) {
  return state ? state->state.t : std::numeric_limits<double>::quiet_NaN();
}

liedrag_status liedrag_state_grid(const liedrag_state* state, int n[3], double length[3]) {
  if (!state) return bad_argument("null argument");
  const liedrag::Grid& g = state->state.grid();
  for (int a = 0; a < 3; ++a) {
    if (n) n[a] = g.n()[a];
    if (length) length[a] = g.length()[a];
  }
  return LIEDRAG_OK;
}

liedrag_status liedrag_state_diagnostic(const liedrag_state* state, const char* column, double* value) {
  if (!state || !column || !value) return bad_argument("null argument");
  return guard([&] {
    const liedrag::Observation o = liedrag::observe_state(state->state, state->cfg);
    auto it = o.values.find(column);
    if (it == o.values.end()) {
      liedrag::fail(liedrag::ErrorKind::kConfig, std::string("unknown diagnostic column '") + column + "'");
    }
    *value = it->second;
    return LIEDRAG_OK;
  });
}

liedrag_status liedrag_state_field(const liedrag_state* state, const char* name, double* buffer, size_t len) {
  if (!state || !name || !buffer) return bad_argument("null argument");
  const liedrag::Array* a = field_by_name(state->state, name);
  if (!a) return bad_argument("unknown field name");
  if (len != a->size()) return bad_argument("buffer length differs from the number of grid points");
  std::memcpy(buffer, a->data(), len * sizeof(double));
  return LIEDRAG_OK;
}

void liedrag_state_free(liedrag_state* state) { delete state; }

liedrag_status liedrag_check(const char* const* ids, size_t count, const char* mutation,
                             liedrag_check_callback callback, void* user, int* all_passed) {
  if (count > 0 && !ids) return bad_argument("null id list");
  return guard([&] {
    std::vector<std::string> wanted;
    for (size_t i = 0; i < count; ++i) {
      if (!ids[i]) liedrag::fail(liedrag::ErrorKind::kConfig, "null criterion id");
      wanted.emplace_back(ids[i]);
    }
    bool ok = true;
    liedrag::run_acceptance(wanted, {mutation ? mutation : ""}, [&](const liedrag::CriterionReport& r) {
      ok = ok && r.passed();
      if (!callback) return;
      std::vector<liedrag_check_line> lines;
      for (const auto& c : r.checks) {
        lines.push_back({c.label.c_str(), c.measured, c.threshold, c.relation.c_str(), c.passed ? 1 : 0});
      }
      callback(r.id.c_str(), r.title.c_str(), r.passed() ? 1 : 0, r.seconds, r.error.c_str(), lines.data(),
               lines.size(), user);
    });
    if (all_passed) *all_passed = ok ? 1 : 0;
    return LIEDRAG_OK;
  });
}

liedrag_status liedrag_list_checks(char** out) {
  if (!out) return bad_argument("null argument");
  return guard([&] {
    nlohmann::json doc;
    doc["criteria"] = nlohmann::json::array();
    for (const auto& [id, title] : liedrag::acceptance_criteria()) doc["criteria"].push_back({{"id", id}, {"title", title}});
    doc["mutations"] = liedrag::acceptance_mutations();
    *out = copy_string(doc.dump(2) + "\n");
    return LIEDRAG_OK;
  });
}

}  // extern "C"
