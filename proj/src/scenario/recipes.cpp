// SPDX-License-Identifier: Apache-2.0

#include "scenario/recipes.hpp"

#include <algorithm>
#include <cmath>

#include "grid_calculus/calculus.hpp"
#include "grid_calculus/forms.hpp"
#include "grid_calculus/interpolate.hpp"
#include "grid_calculus/spectral.hpp"
#include "invariants/invariants.hpp"

namespace liedrag {

namespace {

using Params = std::map<std::string, double>;

/// Angles 2 pi x / L, so every profile is periodic on any box.
Vec3 angles(const Grid& g, std::size_t i) {
  Vec3 x = g.position(i);
  for (int a = 0; a < 3; ++a) x[a] *= Grid::kTwoPi / g.length()[a];
  return x;
}

Vec3 abc(const Vec3& x, double A, double B, double C) {
  return {A * std::sin(x[2]) + C * std::cos(x[1]), B * std::sin(x[0]) + A * std::cos(x[2]),
          C * std::sin(x[1]) + B * std::cos(x[0])};
}

template <class Tag>
Triple<Tag> abc_field(const Grid& g, double amp, double A, double B, double C) {
  return generate_triple<Tag>(g, [&](std::size_t i) {
    Vec3 v = abc(angles(g, i), A, B, C);
    for (double& c : v) c *= amp;
    return v;
  });
}

RecipeFields empty_fields(const Grid& g) { return {VectorField(g), OneForm(g), ScalarField(g)}; }

RecipeFields static_gas(const Grid& g, const Params&) { return empty_fields(g); }

RecipeFields abc_beltrami(const Grid& g, const Params& p) {
  RecipeFields f = empty_fields(g);
  const double A = p.at("A"), B = p.at("B"), C = p.at("C");
  f.u = abc_field<VectorTag>(g, p.at("u_amp"), A, B, C);
  f.Atilde = abc_field<OneFormTag>(g, p.at("a_amp"), A, B, C);
  // A uniform shift leaves B unchanged; it keeps |A| off zero at stagnation points.
  for (double& v : f.Atilde.c[2]) v += p.at("a_offset");
  f.S = generate(g, [&](std::size_t i) { return p.at("s_amp") * std::sin(angles(g, i)[2]); });
  return f;
}

RecipeFields gv_foliation(const Grid& g, const Params& p) {
  RecipeFields f = empty_fields(g);
  // A = f0 grad g0 with f0 = 2 + a cos x cos y and g0 = z.
  f.Atilde = generate_components<OneFormTag>(g, [&](std::size_t i, int c) {
    if (c != 2) return 0.0;
    const Vec3 x = angles(g, i);
    return p.at("f_amp") * (2.0 + p.at("a") * std::cos(x[0]) * std::cos(x[1]));
  });
  f.S = generate(g, [&](std::size_t i) { return p.at("s_amp") * std::sin(angles(g, i)[2]); });
  return f;
}

RecipeFields stratified_blob(const Grid& g, const Params& p) {
  RecipeFields f = empty_fields(g);
  const double w2 = p.at("width") * p.at("width");
  const Vec3 c{p.at("cx"), p.at("cy"), p.at("cz")};
  f.S = generate(g, [&](std::size_t i) {
    const Vec3 x = angles(g, i);
    const double e = std::cos(x[0] - c[0]) + std::cos(x[1] - c[1]) + std::cos(x[2] - c[2]) - 3.0;
    return p.at("s_a") * std::sin(x[2]) + p.at("bump") * std::exp(e / w2);
  });
  const OneForm planar = generate_components<OneFormTag>(g, [&](std::size_t i, int a) {
    const Vec3 x = angles(g, i);
    return a == 2 ? p.at("b_planar") * (std::cos(x[0]) + std::sin(x[1])) : 0.0;
  });
  f.Atilde = planar + abc_field<OneFormTag>(g, p.at("b_mixed"), 1.0, 1.0, 1.0);
  // Optional flow along B gives a planar-field run nonzero cross helicity.
  f.u = scale(p.at("u_align"), retag<VectorTag>(d1(f.Atilde)));
  return f;
}

RecipeFields aligned_ub(const Grid& g, const Params& p) {
  RecipeFields f = empty_fields(g);
  f.Atilde = abc_field<OneFormTag>(g, p.at("b_amp"), 1.0, 1.0, 1.0);
  f.u = scale(p.at("c"), retag<VectorTag>(d1(f.Atilde)));
  return f;
}

Profile prof(const char* shape, double amp) { return Profile{shape, amp}; }

std::vector<Recipe> make_recipes() {
  std::vector<Recipe> out;
  out.push_back({"static_gas", "uniform gas at rest", {}, {}, "uniform", static_gas});
  out.push_back({"abc_beltrami",
                 "ABC velocity and/or ABC vector potential, optional entropy sin z",
                 {{"u_amp", 1.0}, {"a_amp", 0.0}, {"a_offset", 0.0}, {"A", 1.0}, {"B", 1.0}, {"C", 1.0}, {"s_amp", 0.0}},
                 {},
                 "balanced",
                 abc_beltrami,
                 10.0});
  ClebschInit flow;
  flow.phi0 = prof("solenoidal", 1.0);
  flow.lambda0 = prof("sin_x", 0.2);
  flow.mu0 = prof("cos_y_sin_z", 1.0);
  out.push_back({"gv_foliation",
                 "integrable potential (2 + a cos x cos y) dz advected by a Clebsch flow",
                 {{"f_amp", 1.0}, {"a", 0.5}, {"s_amp", 0.0}},
                 flow,
                 "balanced",
                 gv_foliation,
                 4.0});
  out.push_back({"stratified_blob",
                 "entropy s_a sin z plus a smooth bump, Clebsch flow, optional planar or ABC field and aligned flow",
                 {{"s_a", 0.2},
                  {"bump", 0.2},
                  {"width", 1.0},
                  {"cx", std::numbers::pi},
                  {"cy", std::numbers::pi},
                  {"cz", std::numbers::pi},
                  {"b_planar", 0.0},
                  {"b_mixed", 0.0},
                  {"u_align", 0.0}},
                 flow,
                 "uniform",
                 stratified_blob});
  out.push_back({"aligned_ub", "u = c B with B the ABC field of amplitude b_amp", {{"c", 1.0}, {"b_amp", 1.0}},
                 {}, "balanced", aligned_ub, 10.0});
  return out;
}

double scalar_shape(const std::string& shape, const Vec3& x) {
  if (shape == "zero") return 0.0;
  if (shape == "one") return 1.0;
  if (shape == "sin_x") return std::sin(x[0]);
  if (shape == "sin_y") return std::sin(x[1]);
  if (shape == "sin_z") return std::sin(x[2]);
  if (shape == "cos_x") return std::cos(x[0]);
  if (shape == "cos_y") return std::cos(x[1]);
  if (shape == "cos_z") return std::cos(x[2]);
  if (shape == "sin_x_cos_y") return std::sin(x[0]) * std::cos(x[1]);
  if (shape == "cos_y_sin_z") return std::cos(x[1]) * std::sin(x[2]);
  fail(ErrorKind::kConfig, "unknown scalar profile '" + shape + "'");
}

/// Density from pressure and entropy through the equation of state.
ScalarField density_from_pressure(const ScalarField& p, const ScalarField& S, const EosParams& e) {
  for (double v : p.values) {
    if (!(v > 0.0)) fail(ErrorKind::kConfig, "init.rho_mode: balanced pressure is not positive; raise eos.p0");
  }
  return generate(p.grid, [&](std::size_t i) {
    return e.rho0 * std::pow(p.values[i] / e.p0, 1.0 / e.gamma) * std::exp(-(S.values[i] - e.S0) / (e.gamma * e.cv));
  });
}

}  // namespace

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> all = make_recipes();
  return all;
}

const Recipe& find_recipe(const std::string& name) {
  for (const Recipe& r : recipes()) {
    if (r.name == name) return r;
  }
  std::string list;
  for (const Recipe& r : recipes()) list += (list.empty() ? "" : ", ") + r.name;
  fail(ErrorKind::kConfig, "init.name: unknown recipe '" + name + "' (available: " + list + ")");
}

const std::vector<std::string>& scalar_profiles() {
  static const std::vector<std::string> names{"zero",  "one",   "sin_x", "sin_y",       "sin_z",
                                              "cos_x", "cos_y", "cos_z", "sin_x_cos_y", "cos_y_sin_z"};
  return names;
}

const std::vector<std::string>& gamma_profiles() {
  static const std::vector<std::string> names{"zero", "abc", "shear"};
  return names;
}

ScalarField scalar_profile(const Grid& g, const Profile& p) {
  scalar_shape(p.shape, Vec3{});   // validates the name
  return generate(g, [&](std::size_t i) { return p.amp * scalar_shape(p.shape, angles(g, i)); });
}

OneForm gamma_profile(const Grid& g, const Profile& p) {
  if (p.shape == "zero") return OneForm(g);
  if (p.shape == "abc") return abc_field<OneFormTag>(g, p.amp, 1.0, 1.0, 1.0);
  if (p.shape == "shear") {
    return generate_components<OneFormTag>(g, [&](std::size_t i, int c) {
      return c == 0 ? p.amp * std::sin(angles(g, i)[2]) : 0.0;
    });
  }
  fail(ErrorKind::kConfig, "unknown Gamma0 profile '" + p.shape + "'");
}

MhdState build_initial_state(const ScenarioConfig& cfg) {
  const Grid g = cfg.grid();
  const Recipe& recipe = find_recipe(cfg.init);
  Params params = recipe.params;
  for (const auto& [k, v] : cfg.init_params) {
    if (!params.count(k)) fail(ErrorKind::kConfig, "init." + k + ": not a parameter of recipe '" + cfg.init + "'");
    params[k] = v;
  }
  cfg.params.validate();

  const RecipeFields rf = recipe.fields(g, params);
  MhdState s = MhdState::uniform(g, cfg.params);
  s.S = dealias(rf.S);
  s.Atilde = dealias(rf.Atilde);
  s.B = d1(s.Atilde);
  s.Gamma = dealias(gamma_profile(g, cfg.clebsch.Gamma0));
  s.r = dealias(scalar_profile(g, cfg.clebsch.r0));
  s.lambda_tilde = dealias(scalar_profile(g, cfg.clebsch.lambda0));
  s.mu = dealias(scalar_profile(g, cfg.clebsch.mu0));
  const bool solenoidal = cfg.clebsch.phi0.shape == "solenoidal";
  if (!solenoidal) s.phi = dealias(scalar_profile(g, cfg.clebsch.phi0));

  const Spectral sp(g);
  const VectorField gS = grad(s.S);
  const VectorField gmu = grad(s.mu);
  const EosParams& eos = cfg.params.eos;
  const std::string& mode = cfg.rho_mode;
  if (mode != "uniform" && mode != "isobaric" && mode != "balanced") {
    fail(ErrorKind::kConfig, "init.rho_mode: unknown mode '" + mode + "' (uniform, isobaric, balanced)");
  }
  if (mode != "uniform") s.rho = density_from_pressure(ScalarField(g, Array(g.size(), eos.p0)), s.S, eos);

  // u_M and the Lorentz force depend on rho, and the balanced rho depends on
  // u, so iterate. Uniform and isobaric densities need a single pass.
  ScalarField p(g, Array(g.size(), eos.p0));
  const int passes = mode == "balanced" ? 8 : 1;
  for (int pass = 0; pass < passes; ++pass) {
    const VectorField uM = magnetic_velocity(s);
    VectorField u = generate_components<VectorTag>(g, [&](std::size_t i, int a) {
      return rf.u.c[a][i] - s.r.values[i] * gS.c[a][i] - s.lambda_tilde.values[i] * gmu.c[a][i] + uM.c[a][i];
    });
    if (solenoidal) s.phi = dealias(ScalarField(g, sp.inverse_laplacian((-1.0 * div(u)).values)));
    s.u = u + grad(s.phi);
    if (mode != "balanced") break;

    // div(grad p / rho) = div f with f = u x w - grad u^2/2 + J x B / (mu0 rho),
    // split as lap p / rho0 + div((1/rho - 1/rho0) grad p).
    const VectorField w = curl<VectorTag>(s.u);
    const VectorField J = curl<VectorTag>(s.B);
    const VectorField jxb = divide(cross<VectorTag>(J, s.B), cfg.params.mu0 * s.rho);
    const VectorField gp = grad(p);
    VectorField f = cross<VectorTag>(s.u, w) - grad(0.5 * dot(s.u, s.u)) + jxb;
    f = f - generate_components<VectorTag>(g, [&](std::size_t i, int a) {
          return (1.0 / s.rho.values[i] - 1.0 / eos.rho0) * gp.c[a][i];
        });
    const Array pi = sp.inverse_laplacian(div(f).values);
    for (std::size_t i = 0; i < g.size(); ++i) p.values[i] = eos.p0 + eos.rho0 * pi[i];
    s.rho = density_from_pressure(p, s.S, eos);
  }
  s = dealiased(s);
  s.validate();
  return s;
}

const std::vector<std::string>& particle_diagnostic_names() {
  static const std::vector<std::string> names{"S", "I_e", "ab_rho", "I_e_m", "I_h", "I_h_m", "hf12"};
  return names;
}

namespace {

ScalarField diagnostic_field(const MhdState& s, const std::string& name) {
  if (name == "S") return s.S;
  if (name == "I_e") return ertel(s);
  if (name == "ab_rho") return dot(s.Atilde, s.B) / s.rho;
  if (name == "I_e_m") return ertel_mhd(s).value;
  if (name == "I_h") return hollmann(s, false);
  if (name == "I_h_m") return hollmann(s, true);
  if (name == "hf12") return dot(s.u, curl<VectorTag>(s.u)) / s.rho;
  fail(ErrorKind::kConfig, "particles.diagnostics: unknown diagnostic '" + name + "'");
}

}  // namespace

ParticleSet seed_scenario_particles(const MhdState& s, const ScenarioConfig& cfg) {
  SamplerTable table;
  for (const std::string& n : particle_diagnostic_names()) {
    table[n] = [n](const MhdState& st, const std::vector<Vec3>& x) { return interpolate(diagnostic_field(st, n), x); };
  }
  const auto positions = random_positions(s.grid(), static_cast<std::size_t>(cfg.particle_count), cfg.particle_seed);
  ParticleSet p = seed_particles(s, positions, table, cfg.particle_diagnostics,
                                 [](const MhdState& st, const std::string& n) { return max_abs(diagnostic_field(st, n)); });
  for (const Integrand& i : particle_integrands(cfg.particle_diagnostics)) p.accumulators[i.name].assign(p.size(), 0.0);
  return p;
}

std::vector<Integrand> particle_integrands(const std::vector<std::string>& diagnostics) {
  std::vector<Integrand> out;
  if (std::find(diagnostics.begin(), diagnostics.end(), "hf12") != diagnostics.end()) {
    // d/dt (u.w / rho) = -(w / rho).grad(h - u^2/2) along trajectories.
    out.push_back({"hf12", [](const MhdState& s) {
                     const ThermoFields th = eos_eval(s.rho, s.S, s.params.eos);
                     const VectorField w = curl<VectorTag>(s.u);
                     return -1.0 * dot(w, grad(th.h - 0.5 * dot(s.u, s.u))) / s.rho;
                   }});
  }
  return out;
}

std::vector<double> particle_values(const MhdState& s, const ParticleSet& p, const std::string& name) {
  std::vector<double> v = interpolate(diagnostic_field(s, name), p.x);
  if (name == "hf12") {
    // Compare u.w/rho with its t=0 value plus the integrated source.
    const std::vector<double>& acc = p.accumulators.at("hf12");
    for (std::size_t n = 0; n < v.size(); ++n) v[n] -= acc[n];
  }
  return v;
}

}  // namespace liedrag
