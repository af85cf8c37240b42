// SPDX-License-Identifier: Apache-2.0

#include "scenario/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <map>
#include <memory>

#include "dynamics/integrator.hpp"
#include "grid_calculus/calculus.hpp"
#include "grid_calculus/forms.hpp"
#include "grid_calculus/interpolate.hpp"
#include "grid_calculus/spectral.hpp"
#include "invariants/invariants.hpp"
#include "lagrangian/particles.hpp"
#include "scenario/recipes.hpp"

namespace liedrag {

bool CriterionReport::passed() const {
  if (!error.empty() || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.passed; });
}

const std::vector<std::pair<std::string, std::string>>& acceptance_criteria() {
  static const std::vector<std::pair<std::string, std::string>> list{
      {"A1", "exterior-calculus kernel"},
      {"A2", "Faraday as a Lie-dragged 2-form"},
      {"A3", "classical helicities"},
      {"A4", "cross-helicity source identity"},
      {"A5", "Lagrangian invariants and Cauchy solution"},
      {"A6", "nonlocal conservation laws"},
      {"A7", "Weber/Clebsch reconstruction"},
      {"A8", "Godbillon-Vey invariant"},
      {"A9", "energy and mass"},
      {"A10", "advected-form closure"}};
  return list;
}

const std::vector<std::string>& acceptance_mutations() {
  static const std::vector<std::string> list{"nl1_flux_sign", "gch1_flux_sign", "gv21_flux_sign",
                                             "crossh7_source_sign"};
  return list;
}

namespace {

// Residual laws are sampled every kStride steps; halving the sampling rate
// gives the second-order convergence check.
constexpr int kStride = 5;

CheckLine at_most(std::string label, double measured, double threshold) {
  return {std::move(label), measured, threshold, measured <= threshold, "<="};
}

CheckLine within(std::string label, double measured, double lo, double hi) {
  char rel[48];
  std::snprintf(rel, sizeof rel, "in [%g, %g]", lo, hi);
  return {std::move(label), measured, hi, measured >= lo && measured <= hi, rel};
}

double rel_l2(const std::vector<const Array*>& a, const std::vector<const Array*>& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    for (std::size_t i = 0; i < a[c]->size(); ++i) {
      const double d = (*a[c])[i] - (*b[c])[i];
      num += d * d;
      den += (*b[c])[i] * (*b[c])[i];
    }
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

template <class T>
double rel_linf(const T& a, const T& b) {
  const T d = a - b;
  return max_abs(d) / std::max({max_abs(a), max_abs(b), 1e-300});
}

struct CaseSpec {
  ScenarioConfig cfg;
  bool particles = false;
  bool gas_laws = false;
  bool mhd_laws = false;
  bool gv = false;
  bool cross_every_step = false;
};

struct RunData {
  ScenarioConfig cfg;
  MhdState initial;
  MhdState final_state;
  double dt = 0.0;
  std::vector<double> energy;   // every step, including t = 0
  std::vector<double> mass;
  std::vector<double> hc;       // every step when requested
  std::vector<double> qc;
  std::map<std::string, std::vector<LawSnapshot>> laws;   // every kStride steps
  std::map<std::string, std::vector<FormSnapshot>> forms;
  std::map<std::string, std::vector<double>> series;
  ParticleSet particles;
  std::vector<Integrand> integrands;
};

/// Fixed step from the CFL condition at t = 0, with a step count divisible by
/// 2 kStride so both sampling rates land on t_end.
double fixed_step(const MhdState& s, const ScenarioConfig& cfg) {
  const double dt = cfl_dt(s, cfg.cfl);
  long n = static_cast<long>(std::ceil(cfg.t_end / dt));
  n = ((n + 2 * kStride - 1) / (2 * kStride)) * (2 * kStride);
  return cfg.t_end / static_cast<double>(n);
}

class Suite {
 public:
  explicit Suite(AcceptanceOptions opts) : opts_(std::move(opts)) {}

  const RunData& get(const std::string& name) {
    auto it = runs_.find(name);
    if (it == runs_.end()) it = runs_.emplace(name, execute(spec(name))).first;
    return *it->second;
  }

  /// Every case, for criteria that cover all runs.
  static const std::vector<std::string>& case_names() {
    static const std::vector<std::string> names{"abc_gas", "strat_gas", "strat_gas_r0", "strat_mhd", "planar_bperp", "gv"};
    return names;
  }

  const AcceptanceOptions& options() const { return opts_; }

 private:
  static CaseSpec spec(const std::string& name) {
    CaseSpec c;
    if (name == "abc_gas") {
      // Barotropic ABC flow; p0 keeps the balanced pressure positive and the Mach number moderate.
      c.cfg = default_config("abc_beltrami");
      c.cfg.params.eos.p0 = 10.0;
      c.gas_laws = true;
    } else if (name == "strat_gas" || name == "strat_gas_r0") {
      c.cfg = default_config("stratified_blob");
      c.cfg.rho_mode = "balanced";
      if (name == "strat_gas_r0") c.cfg.clebsch.r0 = Profile{"sin_z", 0.1};
      c.particles = name == "strat_gas";
      c.cfg.particle_diagnostics = {"S", "I_e", "I_h"};
      c.gas_laws = true;
    } else if (name == "strat_mhd") {
      c.cfg = default_config("stratified_blob");
      c.cfg.rho_mode = "balanced";
      c.cfg.params.eos.p0 = 4.0;
      c.cfg.init_params["b_mixed"] = 0.3;
      c.particles = true;
      c.cfg.particle_diagnostics = {"S", "ab_rho", "I_e_m"};
      c.mhd_laws = true;
      c.cross_every_step = true;
    } else if (name == "planar_bperp") {
      // Entropy depends on z only and B is horizontal, so B.grad S = 0.
      c.cfg = default_config("stratified_blob");
      c.cfg.rho_mode = "balanced";
      c.cfg.params.eos.p0 = 4.0;
      c.cfg.init_params["bump"] = 0.0;
      c.cfg.init_params["b_planar"] = 0.3;
      c.cfg.init_params["u_align"] = 0.3;
      c.mhd_laws = true;
    } else if (name == "gv") {
      c.cfg = default_config("gv_foliation");
      c.cfg.params.eos.p0 = 4.0;
      c.mhd_laws = true;
      c.gv = true;
    } else {
      fail(ErrorKind::kInternal, "acceptance: unknown case " + name);
    }
    c.cfg.t_end = 1.0;
    c.cfg.cfl = 0.25;
    c.cfg.particle_count = c.particles ? 256 : 0;
    c.cfg.particle_seed = 7;
    if (!c.particles) c.cfg.particle_diagnostics.clear();
    return c;
  }

  void mutate(const std::string& key, ConsLaw& law) const {
    if (opts_.mutation == key + "_flux_sign") law.flux = -law.flux;
  }

  void sample(const CaseSpec& c, const MhdState& s, RunData& d) const {
    auto law = [&](const std::string& key, ConsLaw l) {
      mutate(key, l);
      d.laws[key].push_back({s.t, std::move(l)});
    };
    auto form = [&](const std::string& key, FormField f) { d.forms[key].push_back({s.t, std::move(f), s.u}); };
    d.series["t"].push_back(s.t);
    const OneForm dS = d0(s.S);
    form("dS", dS);
    form("wedge", wedge11(dS, retag<OneFormTag>(weber_w(s))));
    d.series["urec"].push_back(clebsch_velocity(s).velocity_residual);
    if (c.gas_laws) {
      const ConsLaw hf = fluid_helicity(s);
      d.series["Hf"].push_back(hf.integral());
      law("nl1", nonlocal_helicity(s).law);
    }
    if (c.mhd_laws) {
      d.series["Hm"].push_back(magnetic_helicity(s).law.integral());
      d.series["Hc"].push_back(cross_helicity(s).integral());
      law("gch1", nonlocal_cross_helicity(s));
      form("abrho", interior1(retag<VectorTag>(divide(s.B, s.rho)), s.Atilde));
      // Solver dB/dt against the Lie derivative of B as a 2-form via Cartan's formula.
      const StateDerivative ds = rhs(s);
      const TwoForm lie = dealias(-lie_cartan(s.u, s.B));
      d.series["faraday"].push_back(rel_l2({&ds.B.c[0], &ds.B.c[1], &ds.B.c[2]}, {&lie.c[0], &lie.c[1], &lie.c[2]}));
    }
    if (c.gv) {
      const GodbillonVey gv = godbillon_vey(s);
      d.series["Ig"].push_back(gv.Ig);
      d.series["gv_defect"].push_back(gv.defect);
      law("gv21", gv.law);
    }
  }

  void light(const CaseSpec& c, const MhdState& s, RunData& d) const {
    d.energy.push_back(total_energy(s));
    d.mass.push_back(volume_integral(s.rho));
    if (c.cross_every_step) {
      const ConsLaw hc = cross_helicity(s);
      d.hc.push_back(hc.integral());
      const double q = volume_integral(hc.source);
      d.qc.push_back(opts_.mutation == "crossh7_source_sign" ? -q : q);
    }
  }

  std::unique_ptr<RunData> execute(const CaseSpec& c) const {
    auto d = std::make_unique<RunData>();
    d->cfg = c.cfg;
    d->initial = build_initial_state(c.cfg);
    d->dt = fixed_step(d->initial, c.cfg);
    if (c.particles) {
      d->particles = seed_scenario_particles(d->initial, c.cfg);
      d->integrands = particle_integrands(c.cfg.particle_diagnostics);
    }
    light(c, d->initial, *d);
    sample(c, d->initial, *d);

    RunOptions opts;
    opts.t_end = c.cfg.t_end;
    opts.fixed_dt = d->dt;
    const long steps = std::lround(c.cfg.t_end / d->dt);
    for (long k = 1; k < steps; ++k) opts.observe_times.push_back(static_cast<double>(k) * d->dt);
    auto observer = [&](const MhdState& s) {
      light(c, s, *d);
      const long k = std::lround(s.t / d->dt);
      if (k % kStride == 0) sample(c, s, *d);
    };
    auto hook = [&](const StageStates& st, double dt) {
      if (c.particles) d->particles = advance_particles(d->particles, st, dt, d->integrands);
    };
    d->final_state = run(d->initial, opts, observer, hook);
    return d;
  }

  AcceptanceOptions opts_;
  std::map<std::string, std::unique_ptr<RunData>> runs_;
};

double max_rel_drift(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x - v.front()));
  return m / std::max(std::abs(v.front()), 1e-300);
}

std::vector<LawSnapshot> every_other(const std::vector<LawSnapshot>& v) {
  std::vector<LawSnapshot> out;
  for (std::size_t i = 0; i < v.size(); i += 2) out.push_back(v[i]);
  return out;
}

/// Residual at the finer sampling and its ratio to the coarser one.
void law_checks(std::vector<CheckLine>& out, const std::string& label, const RunData& d, const std::string& key) {
  const auto& series = d.laws.at(key);
  const double fine = conservation_residual(series, kStride * d.dt).l2;
  const double coarse = conservation_residual(every_other(series), 2 * kStride * d.dt).l2;
  out.push_back(at_most(label + " residual at 5 dt", fine, 1e-3));
  out.push_back(within(label + " residual ratio 10 dt / 5 dt", coarse / std::max(fine, 1e-300), 3.0, 5.0));
}

double form_residual(const RunData& d, const std::string& key) {
  return advection_residual(d.forms.at(key), kStride * d.dt).l2;
}

std::vector<CheckLine> criterion_a1() {
  std::vector<CheckLine> out;
  const Grid g({32, 32, 32});
  double dd = 0.0;
  double lie = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto triple = [&](std::uint64_t s, int m) {
      return std::array<ScalarField, 3>{random_band_limited(g, m, s), random_band_limited(g, m, s + 1),
                                        random_band_limited(g, m, s + 2)};
    };
    const ScalarField f = random_band_limited(g, 6, seed);
    const auto a3 = triple(100 + seed * 10, 6);
    const OneForm a(g, a3[0].values, a3[1].values, a3[2].values);
    dd = std::max({dd, max_abs(d1(d0(f))), max_abs(d2(d1(a)))});

    const auto u3 = triple(1000 * seed, 4);
    const VectorField u(g, u3[0].values, u3[1].values, u3[2].values);
    const ScalarField f0 = random_band_limited(g, 4, 1000 * seed + 10);
    const auto o3 = triple(1000 * seed + 20, 4);
    const OneForm w1(g, o3[0].values, o3[1].values, o3[2].values);
    const auto t3 = triple(1000 * seed + 30, 4);
    const TwoForm w2(g, t3[0].values, t3[1].values, t3[2].values);
    const ThreeForm w3(random_band_limited(g, 4, 1000 * seed + 40));
    lie = std::max({lie, rel_linf(lie_cartan(u, f0), lie_direct(u, f0)), rel_linf(lie_cartan(u, w1), lie_direct(u, w1)),
                    rel_linf(lie_cartan(u, w2), lie_direct(u, w2))});
    const ThreeForm lc = lie_cartan(u, w3);
    const ThreeForm ld = lie_direct(u, w3);
    lie = std::max(lie, rel_linf(ScalarField(g, lc.density), ScalarField(g, ld.density)));
  }
  out.push_back(at_most("max |d d| on random band-limited 0- and 1-forms", dd, 1e-12));
  out.push_back(at_most("Cartan vs direct Lie derivative, ranks 0-3, rel Linf", lie, 1e-10));
  return out;
}

std::vector<CheckLine> evaluate(const std::string& id, Suite& suite) {
  std::vector<CheckLine> out;
  const double V = std::pow(Grid::kTwoPi, 3);
  if (id == "A1") return criterion_a1();
  if (id == "A2") {
    for (const char* name : {"strat_mhd", "gv"}) {
      const auto& f = suite.get(name).series.at("faraday");
      out.push_back(at_most(std::string(name) + ": solver dB/dt vs -L_u B, rel L2", *std::max_element(f.begin(), f.end()),
                            1e-6));
    }
  } else if (id == "A3") {
    const RunData& abc = suite.get("abc_gas");
    const auto& hf = abc.series.at("Hf");
    out.push_back(at_most("abc_gas: H_f(0) vs 3(2 pi)^3, rel", std::abs(hf.front() - 3.0 * V) / (3.0 * V), 1e-10));
    out.push_back(at_most("abc_gas: H_f drift, rel", max_rel_drift(hf), 1e-3));
    out.push_back(at_most("strat_mhd: H_m drift, rel", max_rel_drift(suite.get("strat_mhd").series.at("Hm")), 1e-4));
    out.push_back(at_most("planar_bperp: H_c drift, rel", max_rel_drift(suite.get("planar_bperp").series.at("Hc")), 1e-3));
  } else if (id == "A4") {
    const RunData& d = suite.get("strat_mhd");
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t k = 1; k + 1 < d.hc.size(); ++k) {
      const double rate = (d.hc[k + 1] - d.hc[k - 1]) / (2.0 * d.dt);
      worst = std::max(worst, std::abs(rate - d.qc[k]));
      scale = std::max({scale, std::abs(rate), std::abs(d.qc[k])});
    }
    out.push_back(at_most("strat_mhd: |dH_c/dt - int T B.grad S| / max scale", worst / std::max(scale, 1e-300), 1e-3));
  } else if (id == "A5") {
    const RunData& gas = suite.get("strat_gas");
    const MhdState& sg = gas.final_state;
    const double lim[] = {1e-4, 1e-3, 5e-3};
    const char* gnames[] = {"S", "I_e", "I_h"};
    for (int k = 0; k < 3; ++k) {
      const DriftStats ds = advected_scalar_drift(gas.particles, gnames[k], particle_values(sg, gas.particles, gnames[k]));
      out.push_back(at_most(std::string("strat_gas: tracer drift of ") + gnames[k], ds.max, lim[k]));
    }
    const RunData& mhd = suite.get("strat_mhd");
    const MhdState& sm = mhd.final_state;
    for (const char* n : {"ab_rho", "I_e_m"}) {
      const DriftStats ds = advected_scalar_drift(mhd.particles, n, particle_values(sm, mhd.particles, n));
      out.push_back(at_most(std::string("strat_mhd: tracer drift of ") + n, ds.max, 1e-3));
    }
    const CauchyResult cr =
        cauchy_B(mhd.particles, interpolate(mhd.initial.B, mhd.particles.x0), interpolate(mhd.initial.rho, mhd.particles.x0));
    const std::vector<Vec3> be = interpolate(sm.B, mhd.particles.x);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t n = 0; n < be.size(); ++n) {
      for (int a = 0; a < 3; ++a) {
        num += (cr.B[n][a] - be[n][a]) * (cr.B[n][a] - be[n][a]);
        den += be[n][a] * be[n][a];
      }
    }
    out.push_back(at_most("strat_mhd: Cauchy B vs Eulerian B, rel L2", std::sqrt(num / den), 1e-3));
  } else if (id == "A6") {
    law_checks(out, "strat_gas (r0 = 0): nl1", suite.get("strat_gas"), "nl1");
    law_checks(out, "strat_gas_r0 (r0 = 0.1 sin z): nl1", suite.get("strat_gas_r0"), "nl1");
    law_checks(out, "strat_mhd: gch1", suite.get("strat_mhd"), "gch1");
  } else if (id == "A7") {
    for (const char* name : {"strat_gas", "strat_mhd"}) {
      out.push_back(at_most(std::string(name) + ": |u_rec - u| / |u| at t = 1", suite.get(name).series.at("urec").back(),
                            1e-3));
    }
  } else if (id == "A8") {
    const RunData& d = suite.get("gv");
    const auto& defect = d.series.at("gv_defect");
    out.push_back(at_most("gv: max |A.curl A| over the run", *std::max_element(defect.begin(), defect.end()), 1e-6));
    const auto& ig = d.series.at("Ig");
    double drift = 0.0;
    for (double x : ig) drift = std::max(drift, std::abs(x - ig.front()));
    out.push_back(at_most("gv: |Ig(t) - Ig(0)| / max(1, |Ig(0)|)", drift / std::max(1.0, std::abs(ig.front())), 1e-3));
    law_checks(out, "gv: gv21", d, "gv21");
    ScenarioConfig abc = default_config("abc_beltrami");
    abc.init_params["a_amp"] = 1.0;
    abc.params.eos.p0 = 10.0;
    abc.init_params["a_offset"] = 2.0;
    const GodbillonVey neg = godbillon_vey(build_initial_state(abc));
    const bool warned = !neg.warnings.empty() && neg.warnings.front().find("undefined") != std::string::npos;
    CheckLine c{"ABC potential: defect raises the undefined warning", neg.defect, GvOptions{}.tolerance,
                warned && neg.defect > GvOptions{}.tolerance, ">"};
    out.push_back(c);
  } else if (id == "A9") {
    for (const std::string& name : Suite::case_names()) {
      const RunData& d = suite.get(name);
      out.push_back(at_most(name + ": energy drift, rel", max_rel_drift(d.energy), 1e-4));
      out.push_back(at_most(name + ": mass drift, rel", max_rel_drift(d.mass), 1e-12));
    }
  } else if (id == "A10") {
    for (const char* name : {"strat_gas", "strat_mhd"}) {
      const RunData& d = suite.get(name);
      out.push_back(at_most(std::string(name) + ": d0(S) advection residual", form_residual(d, "dS"), 1e-3));
      out.push_back(at_most(std::string(name) + ": wedge11(dS, w) advection residual", form_residual(d, "wedge"), 1e-3));
    }
    out.push_back(
        at_most("strat_mhd: interior1(B/rho, A) advection residual", form_residual(suite.get("strat_mhd"), "abrho"), 1e-3));
  } else {
    fail(ErrorKind::kConfig, "unknown acceptance criterion '" + id + "'");
  }
  return out;
}

}  // namespace

std::vector<CriterionReport> run_acceptance(const std::vector<std::string>& ids, const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionReport&)>& on_done) {
  if (!opts.mutation.empty()) {
    const auto& m = acceptance_mutations();
    if (std::find(m.begin(), m.end(), opts.mutation) == m.end()) {
      fail(ErrorKind::kConfig, "unknown mutation '" + opts.mutation + "'");
    }
  }
  std::vector<std::string> wanted;
  const bool all = ids.empty() || (ids.size() == 1 && ids[0] == "all");
  for (const auto& [id, title] : acceptance_criteria()) {
    if (all || std::find(ids.begin(), ids.end(), id) != ids.end()) wanted.push_back(id);
  }
  if (!all) {
    for (const std::string& id : ids) {
      if (std::find(wanted.begin(), wanted.end(), id) == wanted.end()) {
        std::string list;
        for (const auto& [i, t] : acceptance_criteria()) list += (list.empty() ? "" : ", ") + i;
        fail(ErrorKind::kConfig, "unknown acceptance criterion '" + id + "' (available: " + list + ", all)");
      }
    }
  }

  Suite suite(opts);
  std::vector<CriterionReport> out;
  for (const std::string& id : wanted) {
    CriterionReport r;
    r.id = id;
    for (const auto& [i, t] : acceptance_criteria()) {
      if (i == id) r.title = t;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      r.checks = evaluate(id, suite);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_done) on_done(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace liedrag
