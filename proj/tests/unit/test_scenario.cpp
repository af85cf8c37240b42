// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "common/error.hpp"
#include "dynamics/integrator.hpp"
#include "invariants/invariants.hpp"
#include "json.hpp"
#include "scenario/config.hpp"
#include "scenario/recipes.hpp"
#include "scenario/runner.hpp"
#include "support.hpp"

using namespace liedrag;
namespace fs = std::filesystem;

namespace {

const double kVol = 8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;

std::string config_error(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConfig);
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) out.push_back(line);
  return out;
}

/// Fresh scratch directory under the system temp dir.
fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("liedrag_test_" + name);
  fs::remove_all(p);
  return p;
}

ScenarioConfig small_abc(const fs::path& dir) {
  ScenarioConfig c = default_config("abc_beltrami");
  c.n = {16, 16, 16};
  c.t_end = 0.1;
  c.observer_every = 0.025;
  c.output_dir = dir.string();
  return c;
}

}  // namespace

TEST_CASE("config: minimal file fills every default") {
  const ScenarioConfig c = parse_config_text("{}");
  CHECK(c.n == Index3{32, 32, 32});
  CHECK(c.params.eos.gamma == doctest::Approx(5.0 / 3.0));
  CHECK(c.cfl == 0.25);
  CHECK(c.init == "static_gas");
  CHECK(c == default_config("static_gas"));
}

TEST_CASE("config: errors name the offending key") {
  CHECK(config_error(R"({"grid.nx": 16})").find("grid.nx") != std::string::npos);
  CHECK(config_error(R"({"run.cfl": "fast"})").find("run.cfl") != std::string::npos);
  CHECK(config_error(R"({"grid.n": 7})").find("grid.n") != std::string::npos);
  const std::string unknown = config_error(R"({"init.name": "vortex_street"})");
  CHECK(unknown.find("init.name") != std::string::npos);
  for (const Recipe& r : recipes()) CHECK(unknown.find(r.name) != std::string::npos);
  CHECK(config_error(R"({"init.name": "abc_beltrami", "init.not_a_param": 1})").find("init.not_a_param") !=
        std::string::npos);
}

TEST_CASE("config: recipe parameters and comments") {
  const ScenarioConfig c = parse_config_text(R"({
    // comments are accepted
    "init.name": "stratified_blob",
    "init.b_mixed": 0.3,
    "clebsch.r0": "sin_z", "clebsch.r0_amp": 0.1
  })");
  CHECK(c.init_params.at("b_mixed") == 0.3);
  CHECK(c.init_params.at("s_a") == find_recipe("stratified_blob").params.at("s_a"));
  CHECK(c.clebsch.r0 == Profile{"sin_z", 0.1});
}

TEST_CASE("config: serialize then parse is the identity") {
  for (const Recipe& r : recipes()) {
    ScenarioConfig c = default_config(r.name);
    c.n = {16, 8, 12};
    c.length = {1.0, 2.0, 3.0};
    c.t_end = 0.1 + 1.0 / 3.0;
    c.particle_count = 5;
    c.particle_diagnostics = {"S", "I_e"};
    const std::string text = serialize_config(c);
    const ScenarioConfig back = parse_config_text(text);
    CHECK(back == c);
    CHECK(serialize_config(back) == text);
  }
}

TEST_CASE("recipes: abc Beltrami flow has helicity 3 V") {
  ScenarioConfig c = default_config("abc_beltrami");
  c.n = {16, 16, 16};
  const MhdState s = build_initial_state(c);
  CHECK(fluid_helicity(s).integral() == doctest::Approx(3.0 * kVol).epsilon(1e-12));
  const Observation o = observe_state(s, c);
  CHECK(o.values.at("Hf_eq_hf3") == doctest::Approx(3.0 * kVol).epsilon(1e-12));
  CHECK(std::isnan(o.values.at("Hm_eq_maghel2")));
}

TEST_CASE("recipes: the f grad z foliation is integrable") {
  ScenarioConfig c = default_config("gv_foliation");
  c.n = {16, 16, 16};
  const MhdState s = build_initial_state(c);
  const GodbillonVey gv = godbillon_vey(s);
  CHECK(gv.defect <= 1e-12);
  CHECK(std::abs(gv.Ig) <= 1e-12);
}

TEST_CASE("recipes: the static gas is an equilibrium") {
  ScenarioConfig c = default_config("static_gas");
  c.n = {8, 8, 8};
  const MhdState s = build_initial_state(c);
  const StateDerivative d = rhs(s);
  CHECK(max_abs(d.rho) <= 1e-14);
  CHECK(max_abs(d.u) <= 1e-14);
  CHECK(max_abs(d.S) <= 1e-14);
  CHECK(max_abs(d.B) <= 1e-14);
  // The gauge potentials drift uniformly: d phi/dt = -h and d r/dt = T.
  const double h = s.params.eos.gamma / (s.params.eos.gamma - 1.0) * s.params.eos.p0 / s.params.eos.rho0;
  CHECK(max_abs(d.phi) == doctest::Approx(h));
  const double T = s.params.eos.p0 / (s.params.eos.rho0 * s.params.eos.cv * (s.params.eos.gamma - 1.0));
  CHECK(max_abs(d.r) == doctest::Approx(T));
}

TEST_CASE("recipes: every recipe builds a valid state") {
  for (const Recipe& r : recipes()) {
    ScenarioConfig c = default_config(r.name);
    c.n = {16, 16, 16};
    CAPTURE(r.name);
    CHECK_NOTHROW(build_initial_state(c).validate());
  }
}

TEST_CASE("run: t_end = 0 writes headers only") {
  const fs::path dir = scratch("t0");
  ScenarioConfig c = small_abc(dir);
  c.t_end = 0.0;
  c.particle_count = 4;
  c.particle_diagnostics = {"S"};
  const RunReport r = run_scenario(c);
  CHECK_FALSE(r.blowup);
  CHECK(r.rows == 0);
  const auto diag = lines_of(slurp(dir / "diagnostics.csv"));
  REQUIRE(diag.size() == 1);
  CHECK(diag[0].rfind("t,", 0) == 0);
  CHECK(lines_of(slurp(dir / "particles.csv")).size() == 1);
  fs::remove_all(dir);
}

TEST_CASE("run: outputs are deterministic and listed in the manifest") {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  ScenarioConfig c = small_abc(a);
  c.dump_fields = true;
  c.particle_count = 8;
  c.particle_diagnostics = {"S", "I_e"};
  const RunReport ra = run_scenario(c);
  ScenarioConfig cb = c;
  cb.output_dir = b.string();
  const RunReport rb = run_scenario(cb);
  REQUIRE_FALSE(ra.blowup);
  CHECK(ra.rows == 5);
  CHECK(rb.rows == ra.rows);
  CHECK(slurp(a / "diagnostics.csv") == slurp(b / "diagnostics.csv"));
  CHECK(slurp(a / "particles.csv") == slurp(b / "particles.csv"));

  const auto diag = lines_of(slurp(a / "diagnostics.csv"));
  REQUIRE(diag.size() == 6);
  const std::size_t columns = diagnostic_columns().size();
  for (const std::string& line : diag) {
    CHECK(static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1 == columns);
  }

  const nlohmann::json m = nlohmann::json::parse(slurp(a / "manifest.json"));
  CHECK(m.at("status") == "ok");
  CHECK(m.at("schema_version") == kDiagnosticsSchemaVersion);
  CHECK(m.at("rows") == 5);
  CHECK(parse_config_text(m.at("config").dump()) == c);
  CHECK(m.at("config_sha256") == sha256_hex(serialize_config(c)));
  const std::size_t points = c.grid().size();
  bool saw_payload = false;
  for (const auto& f : m.at("files")) {
    const fs::path p = a / f.at("path").get<std::string>();
    REQUIRE(fs::exists(p));
    CHECK(f.at("sha256") == sha256_file(p.string()));
    CHECK(f.at("bytes") == fs::file_size(p));
    if (p.extension() == ".bin") {
      CHECK(fs::file_size(p) == 8 * points);
      saw_payload = true;
    }
  }
  CHECK(saw_payload);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("run: a blowup keeps the partial outputs") {
  const fs::path dir = scratch("blowup");
  ScenarioConfig c = small_abc(dir);
  c.dt = 1.0;
  c.t_end = 200.0;
  c.observer_every = 1.0;
  const RunReport r = run_scenario(c);
  CHECK(r.blowup);
  CHECK(r.last_valid_time < c.t_end);
  CHECK(r.rows >= 1);
  const nlohmann::json m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m.at("status") == "blowup");
  CHECK(m.at("last_valid_time").get<double>() == r.last_valid_time);
  CHECK(lines_of(slurp(dir / "diagnostics.csv")).size() == static_cast<std::size_t>(r.rows) + 1);
  fs::remove_all(dir);
}

TEST_CASE("run: u.w/rho minus its integrated source is carried by the tracers") {
  const fs::path dir = scratch("hf12");
  ScenarioConfig c = small_abc(dir);
  c.n = {24, 24, 24};
  c.t_end = 0.5;
  c.observer_every = 0.5;
  c.particle_count = 16;
  c.particle_diagnostics = {"S", "hf12"};
  REQUIRE_FALSE(run_scenario(c).blowup);
  const auto rows = lines_of(slurp(dir / "particles.csv"));
  REQUIRE(rows.size() == 1 + 2 * 16);
  CHECK(rows[0].substr(rows[0].rfind(',') + 1) == "hf12");
  auto last = [](const std::string& line) { return std::stod(line.substr(line.rfind(',') + 1)); };
  double drift = 0.0;
  double scale = 0.0;
  for (std::size_t n = 0; n < 16; ++n) {
    drift = std::max(drift, std::abs(last(rows[17 + n]) - last(rows[1 + n])));
    scale = std::max(scale, std::abs(last(rows[1 + n])));
  }
  CHECK(scale > 0.1);
  CHECK(drift <= 5e-3 * scale);
  fs::remove_all(dir);
}

TEST_CASE("sha256 matches a known digest") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
