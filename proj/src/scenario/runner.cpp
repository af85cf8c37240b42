// SPDX-License-Identifier: Apache-2.0

#include "scenario/runner.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "dynamics/integrator.hpp"
#include "grid_calculus/calculus.hpp"
#include "grid_calculus/forms.hpp"
#include "json.hpp"
#include "lagrangian/particles.hpp"
#include "scenario/recipes.hpp"

namespace liedrag {

namespace fs = std::filesystem;

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kIntegralColumns{
    "H_eq_H1",         "M_eq_2_1",           "Hf_eq_hf3",        "Qf_eq_hf10",        "Hc_eq_crh2",
    "Qc_eq_crossh7",   "Hm_eq_maghel2",      "HopfDefect_eq_gv5", "EdotB_eq_mh4",     "D_nl1_integral",
    "D_nl10_integral", "wOmega_eq_nl9",      "D_gch1_integral",  "Ig_eq_gv16",        "GVdefect_eq_integr1",
    "Urec_eq_Clebsch3", "Weber_eq_wt8d",     "Ie_charge_eq_top7", "Ib_charge_eq_top10", "I32_eq_i4",
    "I43_eq_i4",       "divB_max"};

// Residual column -> law or form key in Observation.
const std::vector<std::pair<std::string, std::string>> kResidualColumns{
    {"Hf_eq_hf3_res_L2", "hf3"},         {"Hc_eq_crh2_res_L2", "crh2"},     {"Hm_eq_maghel2_res_L2", "maghel2"},
    {"D_nl1_res_L2", "nl1"},             {"D_nl10_res_L2", "nl10"},         {"D_gch1_res_L2", "gch1"},
    {"psi_eq_gv21_res_L2", "gv21"},      {"dS_eq_liedr2_res_L2", "dS"},     {"wedge_eq_liedr3_res_L2", "wedge"},
    {"abrho_eq_liedr1_res_L2", "abrho"}};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Catches domain errors of diagnostics that are undefined for some states.
template <class F>
double guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kDomain) return kNan;
    throw;
  }
}

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

/// k * every for k >= 1 strictly below t_end.
std::vector<double> schedule(double every, double t_end) {
  std::vector<double> out;
  if (!(every > 0.0)) return out;
  for (long k = 1;; ++k) {
    const double t = static_cast<double>(k) * every;
    if (t >= t_end - 1e-9 * every) break;
    out.push_back(t);
  }
  return out;
}

void write_le_doubles(std::ofstream& out, const Array& a) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(a.data()), static_cast<std::streamsize>(a.size() * sizeof(double)));
  } else {
    for (double v : a) {
      unsigned char b[8];
      std::memcpy(b, &v, 8);
      for (int i = 7; i >= 0; --i) out.put(static_cast<char>(b[i]));
    }
  }
}

class CsvFile {
 public:
  CsvFile(const fs::path& path, const std::vector<std::string>& header) : out_(path, std::ios::binary) {
    if (!out_) fail(ErrorKind::kIo, "cannot write " + path.string());
    for (std::size_t c = 0; c < header.size(); ++c) out_ << (c ? "," : "") << header[c];
    out_ << '\n';
    out_.flush();
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) out_ << (c ? "," : "") << cells[c];
    out_ << '\n';
    out_.flush();
  }

 private:
  std::ofstream out_;
};

}  // namespace

const std::vector<std::string>& diagnostic_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c{"t"};
    c.insert(c.end(), kIntegralColumns.begin(), kIntegralColumns.end());
    for (const auto& [name, key] : kResidualColumns) c.push_back(name);
    return c;
  }();
  return cols;
}

Observation observe_state(const MhdState& s, const ScenarioConfig& cfg) {
  Observation o;
  o.t = s.t;
  o.u = s.u;
  for (const std::string& c : kIntegralColumns) o.values[c] = kNan;
  auto& v = o.values;
  const Grid& g = s.grid();
  const bool mag = s.magnetic();
  SubBox half = full_box(g);
  half.hi[2] = 0.5 * g.length()[2];

  v["H_eq_H1"] = total_energy(s);
  v["M_eq_2_1"] = volume_integral(s.rho);
  const ConsLaw hf = fluid_helicity(s);
  v["Hf_eq_hf3"] = hf.integral();
  const NonlocalHelicity nl = nonlocal_helicity(s);
  v["D_nl1_integral"] = nl.law.integral();
  v["D_nl10_integral"] = nl.potential_form.integral();
  if (!mag) {
    // The gas laws carry no Lorentz-force terms, so they only apply without a field.
    v["Qf_eq_hf10"] = volume_integral(hf.source);
    v["wOmega_eq_nl9"] = nl.w_dot_omega;
    o.laws["hf3"] = hf;
    o.laws["nl1"] = nl.law;
    o.laws["nl10"] = nl.potential_form;
  }
  const ClebschCheck cl = clebsch_velocity(s);
  v["Urec_eq_Clebsch3"] = cl.velocity_residual;
  v["Weber_eq_wt8d"] = cl.weber_residual;
  v["Ie_charge_eq_top7"] = topological_charge(s, "ertel", half);

  const OneForm dS = d0(s.S);
  o.forms["dS"] = dS;
  o.forms["wedge"] = wedge11(dS, retag<OneFormTag>(weber_w(s)));

  if (mag) {
    const ConsLaw hc = cross_helicity(s);
    v["Hc_eq_crh2"] = hc.integral();
    v["Qc_eq_crossh7"] = volume_integral(hc.source);
    o.laws["crh2"] = hc;
    const MagneticHelicity hm = magnetic_helicity(s);
    v["Hm_eq_maghel2"] = hm.law.integral();
    v["HopfDefect_eq_gv5"] = hm.hopf_defect;
    v["EdotB_eq_mh4"] = hm.max_e_dot_b;
    o.laws["maghel2"] = hm.law;
    const ConsLaw gch = nonlocal_cross_helicity(s);
    v["D_gch1_integral"] = gch.integral();
    o.laws["gch1"] = gch;
    try {
      const GodbillonVey gv = godbillon_vey(s, GvOptions{cfg.gv_floor, cfg.gv_tolerance});
      v["GVdefect_eq_integr1"] = gv.defect;
      if (gv.warnings.empty()) {
        v["Ig_eq_gv16"] = gv.Ig;
        o.laws["gv21"] = gv.law;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDomain) throw;
    }
    v["Ib_charge_eq_top10"] = topological_charge(s, "entropy-B", half);
    const Polynomial phi = Polynomial::parse(cfg.phi);
    v["I32_eq_i4"] = guarded([&] { return generalized_integral(s, "I32", phi); });
    v["I43_eq_i4"] = guarded([&] { return generalized_integral(s, "I43", phi); });
    v["divB_max"] = max_abs(div(s.B));
    o.forms["abrho"] = interior1(retag<VectorTag>(divide(s.B, s.rho)), s.Atilde);
  }
  return o;
}

std::map<std::string, double> residual_columns(const Observation& prev, const Observation& mid,
                                               const Observation& next, double dt_obs) {
  std::map<std::string, double> out;
  for (const auto& [col, key] : kResidualColumns) {
    out[col] = kNan;
    if (mid.laws.count(key) && prev.laws.count(key) && next.laws.count(key)) {
      out[col] = conservation_residual({{prev.t, prev.laws.at(key)}, {mid.t, mid.laws.at(key)}, {next.t, next.laws.at(key)}},
                                       dt_obs)
                     .l2;
    } else if (mid.forms.count(key) && prev.forms.count(key) && next.forms.count(key)) {
      out[col] = advection_residual({{prev.t, prev.forms.at(key), prev.u},
                                     {mid.t, mid.forms.at(key), mid.u},
                                     {next.t, next.forms.at(key), next.u}},
                                    dt_obs)
                     .l2;
    }
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::kInternal, "sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return sha256_hex(os.str());
}

std::vector<std::string> dump_fields(const MhdState& s, const std::string& dir, const std::string& stem) {
  const Grid& g = s.grid();
  std::vector<std::pair<std::string, const Array*>> fields{{"rho", &s.rho.values},
                                                           {"S", &s.S.values},
                                                           {"phi", &s.phi.values},
                                                           {"r", &s.r.values},
                                                           {"lambda_tilde", &s.lambda_tilde.values},
                                                           {"mu", &s.mu.values}};
  const char* axis = "xyz";
  for (int a = 0; a < 3; ++a) {
    fields.push_back({std::string("u_") + axis[a], &s.u.c[a]});
    fields.push_back({std::string("B_") + axis[a], &s.B.c[a]});
    fields.push_back({std::string("Atilde_") + axis[a], &s.Atilde.c[a]});
    fields.push_back({std::string("Gamma_") + axis[a], &s.Gamma.c[a]});
  }
  std::vector<std::string> written;
  nlohmann::json header;
  header["time"] = s.t;
  header["n"] = {g.n()[0], g.n()[1], g.n()[2]};
  header["length"] = {g.length()[0], g.length()[1], g.length()[2]};
  header["dtype"] = "float64";
  header["byte_order"] = "little";
  header["layout"] = "row-major, z fastest: index = (i * ny + j) * nz + k";
  header["fields"] = nlohmann::json::object();
  for (const auto& [name, data] : fields) {
    const std::string file = stem + "_" + name + ".bin";
    std::ofstream out(fs::path(dir) / file, std::ios::binary);
    if (!out) fail(ErrorKind::kIo, "cannot write " + (fs::path(dir) / file).string());
    write_le_doubles(out, *data);
    header["fields"][name] = file;
    written.push_back(file);
  }
  const std::string hfile = stem + ".json";
  std::ofstream h(fs::path(dir) / hfile, std::ios::binary);
  if (!h) fail(ErrorKind::kIo, "cannot write " + (fs::path(dir) / hfile).string());
  h << header.dump(2) << '\n';
  written.push_back(hfile);
  return written;
}

RunReport run_scenario(const ScenarioConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create output directory " + dir.string() + ": " + ec.message());

  RunReport report;
  MhdState s0 = build_initial_state(cfg);
  ParticleSet particles = seed_scenario_particles(s0, cfg);
  const std::vector<Integrand> integrands = particle_integrands(cfg.particle_diagnostics);

  CsvFile diag(dir / "diagnostics.csv", diagnostic_columns());
  std::vector<std::string> pheader{"t", "id", "x", "y", "z", "det_deform", "acc_r", "acc_phi"};
  for (const std::string& d : cfg.particle_diagnostics) pheader.push_back(d);
  CsvFile pcsv(dir / "particles.csv", pheader);
  report.files = {"diagnostics.csv", "particles.csv"};

  const std::vector<double> obs_times = schedule(cfg.observer_every, cfg.t_end);
  const std::vector<double> dump_times = schedule(cfg.dump_every, cfg.t_end);
  int dump_index = 0;

  // Rows wait for the next observation so their residual columns can be filled.
  std::vector<Observation> window;
  auto emit = [&](const Observation& o, const std::map<std::string, double>& res) {
    std::vector<std::string> cells{fmt(o.t)};
    for (const std::string& c : kIntegralColumns) cells.push_back(fmt(o.values.at(c)));
    for (const auto& [col, key] : kResidualColumns) {
      auto it = res.find(col);
      cells.push_back(fmt(it == res.end() ? kNan : it->second));
    }
    diag.row(cells);
    ++report.rows;
  };
  auto push = [&](Observation o) {
    window.push_back(std::move(o));
    if (window.size() == 1) return;
    const std::size_t m = window.size() - 2;
    std::map<std::string, double> res;
    if (m >= 1) {
      const double d1 = window[m].t - window[m - 1].t;
      const double d2 = window[m + 1].t - window[m].t;
      if (std::abs(d1 - d2) <= 1e-9 * d1) res = residual_columns(window[m - 1], window[m], window[m + 1], d1);
    }
    emit(window[m], res);
    if (window.size() == 3) window.erase(window.begin());
  };
  auto particle_rows = [&](const MhdState& s) {
    std::map<std::string, std::vector<double>> vals;
    for (const std::string& d : cfg.particle_diagnostics) vals[d] = particle_values(s, particles, d);
    for (std::size_t n = 0; n < particles.size(); ++n) {
      std::vector<std::string> cells{fmt(s.t), std::to_string(n), fmt(particles.x[n][0]), fmt(particles.x[n][1]),
                                     fmt(particles.x[n][2]), fmt(det3(particles.deform[n])), fmt(particles.acc_r[n]),
                                     fmt(particles.acc_phi[n])};
      for (const std::string& d : cfg.particle_diagnostics) cells.push_back(fmt(vals[d][n]));
      pcsv.row(cells);
    }
  };
  auto do_dump = [&](const MhdState& s) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "fields_%04d", dump_index++);
    for (const std::string& f : dump_fields(s, dir.string(), stem)) report.files.push_back(f);
  };

  report.last_valid_time = s0.t;
  if (cfg.t_end > 0.0) {
    push(observe_state(s0, cfg));
    particle_rows(s0);
    RunOptions opts;
    opts.t_end = cfg.t_end;
    opts.cfl = cfg.cfl;
    opts.fixed_dt = cfg.dt;
    opts.observe_times = obs_times;
    opts.observe_times.insert(opts.observe_times.end(), dump_times.begin(), dump_times.end());
    auto observer = [&](const MhdState& s) {
      report.last_valid_time = s.t;
      const bool at_end = same_time(s.t, cfg.t_end);
      bool row = at_end;
      for (double t : obs_times) row = row || same_time(s.t, t);
      bool dump = cfg.dump_fields && at_end;
      for (double t : dump_times) dump = dump || (cfg.dump_fields && same_time(s.t, t));
      if (row) {
        push(observe_state(s, cfg));
        particle_rows(s);
      }
      if (dump) do_dump(s);
    };
    auto hook = [&](const StageStates& st, double dt) {
      if (particles.size() > 0) particles = advance_particles(particles, st, dt, integrands);
    };
    try {
      run(s0, opts, observer, hook);
    } catch (const BlowupError& e) {
      report.blowup = true;
      report.last_valid_time = e.last_valid_time();
      report.message = e.what();
    }
    if (!window.empty()) emit(window.back(), {});
  }

  nlohmann::json manifest;
  manifest["version"] = LIEDRAG_VERSION;
  manifest["schema_version"] = kDiagnosticsSchemaVersion;
  const std::string config_text = serialize_config(cfg);
  manifest["config"] = nlohmann::json::parse(config_text);
  manifest["config_sha256"] = sha256_hex(config_text);
  manifest["status"] = report.blowup ? "blowup" : "ok";
  manifest["last_valid_time"] = report.last_valid_time;
  if (report.blowup) manifest["message"] = report.message;
  manifest["rows"] = report.rows;
  manifest["files"] = nlohmann::json::array();
  for (const std::string& f : report.files) {
    const fs::path p = dir / f;
    manifest["files"].push_back({{"path", f}, {"sha256", sha256_file(p.string())}, {"bytes", fs::file_size(p)}});
  }
  std::ofstream m(dir / "manifest.json", std::ios::binary);
  if (!m) fail(ErrorKind::kIo, "cannot write manifest.json");
  m << manifest.dump(2) << '\n';
  return report;
}

}  // namespace liedrag
