// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <numbers>

#include "dynamics/integrator.hpp"
#include "grid_calculus/calculus.hpp"
#include "grid_calculus/forms.hpp"
#include "support.hpp"

using namespace liedrag;
using namespace liedrag::testing;

namespace {

const Grid g32;
const Grid g16({16, 16, 16});

double max_abs_all(const StateDerivative& d) {
  double m = 0.0;
  for (const Array* a : evolved_arrays(d)) m = std::max(m, max_abs(*a));
  return m;
}

double max_state_diff(const MhdState& a, const MhdState& b) {
  const auto x = evolved_arrays(a);
  const auto y = evolved_arrays(b);
  double m = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, max_diff(*x[k], *y[k]));
  return m;
}

/// Small-amplitude smooth state with every field active.
MhdState smooth_state(const Grid& g) {
  MhdState s = MhdState::uniform(g, MhdParams{});
  s.u = scale(0.2, sample_triple<VectorTag>(g, abc));
  s.S = sample(g, [](double x, double y, double z) { return 0.1 * std::sin(z) + 0.05 * std::cos(x + y); });
  s.rho = sample(g, [](double x, double, double z) { return 1.0 + 0.05 * std::cos(x) * std::sin(z); });
  s.Atilde = scale(0.3, sample_triple<OneFormTag>(g, [](double x, double y, double z) {
                      return Vec3{std::sin(y), std::sin(z) + 0.5 * std::cos(x), std::cos(x)};
                    }));
  s.B = d1(s.Atilde);
  s.Gamma = scale(0.1, sample_triple<OneFormTag>(g, [](double x, double y, double z) {
                     return Vec3{std::sin(y), std::sin(z), std::sin(x)};
                   }));
  s.phi = sample(g, [](double x, double y, double) { return 0.1 * std::sin(x) * std::cos(y); });
  s.lambda_tilde = sample(g, [](double x, double, double) { return 0.1 * std::cos(x); });
  s.mu = sample(g, [](double, double y, double z) { return std::sin(y) + 0.5 * std::sin(z); });
  return s;
}

}  // namespace

TEST_CASE("static gas: only phi and r change") {
  const MhdState s = MhdState::uniform(g32, MhdParams{});
  StateDerivative d = rhs(s);
  for (double v : d.phi.values) CHECK(v == doctest::Approx(-2.5).epsilon(1e-14));
  for (double v : d.r.values) CHECK(v == doctest::Approx(-1.5).epsilon(1e-14));
  d.phi = ScalarField(g32);
  d.r = ScalarField(g32);
  CHECK(max_abs_all(d) < 1e-14);
}

TEST_CASE("uniform scalars stay uniform under potential flow") {
  MhdState s = MhdState::uniform(g32, MhdParams{});
  s.phi = sample(g32, [](double x, double, double) { return 0.01 * std::sin(x); });
  s.u = grad(s.phi);
  s.S = ScalarField(g32, 0.3);
  s.lambda_tilde = ScalarField(g32, 0.7);
  const StateDerivative d = rhs(s);
  CHECK(max_abs(d.S) == 0.0);
  CHECK(max_abs(d.lambda_tilde) == 0.0);
}

TEST_CASE("force-free Beltrami field at rest is an equilibrium") {
  MhdState s = MhdState::uniform(g32, MhdParams{});
  s.Atilde = sample_triple<OneFormTag>(g32, abc);
  s.B = d1(s.Atilde);
  const StateDerivative d = rhs(s);
  CHECK(max_abs(d.u) < 1e-12);
  CHECK(max_abs(d.B) < 1e-13);
  CHECK(max_abs(d.Atilde) < 1e-13);
  const MhdState next = step_rk4(s, 0.01);
  CHECK(max_diff(next.u, s.u) < 1e-13);
  CHECK(max_diff(next.B, s.B) < 1e-13);
  CHECK(next.t == doctest::Approx(0.01));
}

TEST_CASE("uniform translation returns an entropy wave after one period") {
  // Isobaric density keeps T grad S - grad h = 0, so the wave is carried rigidly.
  // 32 points along the direction of travel; the transverse axes are trivial.
  const Grid g({32, 8, 8});
  MhdState s = MhdState::uniform(g, MhdParams{});
  const double gamma = s.params.eos.gamma;
  s.S = sample(g, [](double x, double, double) { return std::sin(x); });
  s.rho = generate(g, [&](std::size_t i) { return std::exp(-s.S.values[i] / gamma); });
  s.u = VectorField(g, Vec3{1.0, 0.0, 0.0});
  RunOptions opts;
  opts.t_end = 2.0 * std::numbers::pi;
  opts.fixed_dt = 2.0 * std::numbers::pi / 1000.0;
  RunStats stats;
  const MhdState out = run(s, opts, {}, {}, &stats);
  CHECK(stats.steps == 1000);
  CHECK(out.t == opts.t_end);
  CHECK(max_diff(out.S.values, s.S.values) < 1e-6);
}

TEST_CASE("RK4 global error shrinks sixteenfold when dt halves") {
  const MhdState s = smooth_state(g16);
  auto advance = [&](int steps) {
    MhdState x = s;
    const double dt = 0.4 / steps;
    for (int k = 0; k < steps; ++k) x = step_rk4(x, dt);
    return x;
  };
  const MhdState ref = advance(64);
  const double e1 = max_state_diff(advance(4), ref);
  const double e2 = max_state_diff(advance(8), ref);
  MESSAGE("errors " << e1 << " " << e2 << " ratio " << e1 / e2);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("cfl_dt") {
  MhdState s = MhdState::uniform(g32, MhdParams{});
  const double h = g32.min_spacing();
  CHECK(cfl_dt(s, 0.25) == doctest::Approx(0.25 * h / std::sqrt(5.0 / 3.0)).epsilon(1e-14));
  s.B = TwoForm(g32, Vec3{0.5, 0.0, 0.0});
  const double d1v = cfl_dt(s, 0.25);
  s.B = TwoForm(g32, Vec3{1.0, 0.0, 0.0});
  CHECK(cfl_dt(s, 0.25) < d1v);
  CHECK_THROWS_AS(cfl_dt(s, 1.5), Error);
}

TEST_CASE("run schedule") {
  const MhdState s = MhdState::uniform(g16, MhdParams{});
  int calls = 0;
  RunOptions opts;
  opts.t_end = 0.0;
  RunStats stats;
  const MhdState same = run(s, opts, [&](const MhdState&) { ++calls; }, {}, &stats);
  CHECK(stats.steps == 0);
  CHECK(calls == 0);
  CHECK(max_state_diff(same, s) == 0.0);

  opts.t_end = 0.3;
  opts.observe_times = {0.5, 1.0};
  std::vector<double> seen;
  run(s, opts, [&](const MhdState& x) { seen.push_back(x.t); });
  REQUIRE(seen.size() == 1);
  CHECK(seen[0] == 0.3);

  opts.observe_times = {0.1, 0.2};
  opts.fixed_dt = 0.02;
  seen.clear();
  RunStats st2;
  run(s, opts, [&](const MhdState& x) { seen.push_back(x.t); }, {}, &st2);
  CHECK(seen == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(st2.steps == 15);
}

TEST_CASE("blowup carries the last valid time") {
  MhdState s = MhdState::uniform(g16, MhdParams{});
  s.u = scale(50.0, sample_triple<VectorTag>(g16, [](double x, double, double) { return Vec3{std::sin(x), 0, 0}; }));
  RunOptions opts;
  opts.t_end = 1.0;
  opts.fixed_dt = 0.05;
  try {
    run(s, opts);
    FAIL("expected blowup");
  } catch (const BlowupError& e) {
    CHECK(e.last_valid_time() >= 0.0);
    CHECK(e.last_valid_time() < 1.0);
  }
}

TEST_CASE("short smooth run conserves mass, energy, div B and gauge consistency") {
  MhdState s = smooth_state(g32);
  const double m0 = volume_integral(s.rho);
  auto energy = [](const MhdState& x) {
    const ThermoFields th = eos_eval(x.rho, x.S, x.params.eos);
    const auto u2 = dot(x.u, x.u);
    const auto b2 = dot(x.B, x.B);
    return volume_integral(generate(x.grid(), [&](std::size_t i) {
      return 0.5 * x.rho.values[i] * u2.values[i] + th.eps.values[i] + 0.5 * b2.values[i] / x.params.mu0;
    }));
  };
  const double e0 = energy(s);
  RunOptions opts;
  opts.t_end = 0.2;
  const MhdState out = run(s, opts);
  CHECK(std::abs(volume_integral(out.rho) - m0) / m0 < 1e-13);
  CHECK(std::abs(energy(out) - e0) / e0 < 1e-5);
  CHECK(max_abs(d2(out.B)) < 1e-10);
  CHECK(max_diff(d1(out.Atilde), out.B) < 1e-8);
}
