// SPDX-License-Identifier: Apache-2.0

#include "dynamics/integrator.hpp"

#include <algorithm>
#include <sstream>

#include "grid_calculus/calculus.hpp"
#include "grid_calculus/spectral.hpp"

namespace liedrag {

namespace {

using Components = std::array<Array, 3>;

Components components(const Grid& g) {
  return {Array(g.size()), Array(g.size()), Array(g.size())};
}

}  // namespace

StateDerivative rhs(const MhdState& s) {
  const Grid& g = s.grid();
  const std::size_t n = g.size();
  const Spectral sp(g);
  const ThermoFields th = eos_eval(s.rho, s.S, s.params.eos);
  const auto& u = s.u.c;
  const double mu0 = s.params.mu0;

  StateDerivative d;

  // Mass: -div(rho u)
  {
    Components flux = components(g);
    for_each_point(n, [&](std::size_t i) {
      for (int a = 0; a < 3; ++a) flux[a][i] = s.rho.values[i] * u[a][i];
    });
    Array div = sp.divergence(flux, true);
    for (double& v : div) v = -v;
    d.rho = ScalarField(g, std::move(div));
  }

  // Advected scalars with optional pointwise sources: -u.grad f + q
  const auto gradS = sp.gradient(s.S.values);
  auto advected = [&](const Components& gf, auto source) {
    Array out(n);
    for_each_point(n, [&](std::size_t i) {
      out[i] = -(u[0][i] * gf[0][i] + u[1][i] * gf[1][i] + u[2][i] * gf[2][i]) + source(i);
    });
    return ScalarField(g, sp.dealiased(out));
  };
  auto none = [](std::size_t) { return 0.0; };
  d.S = advected(gradS, none);
  d.phi = advected(sp.gradient(s.phi.values), [&](std::size_t i) {
    const double u2 = u[0][i] * u[0][i] + u[1][i] * u[1][i] + u[2][i] * u[2][i];
    return 0.5 * u2 - th.h.values[i];
  });
  d.r = advected(sp.gradient(s.r.values), [&](std::size_t i) { return -th.T.values[i]; });
  d.lambda_tilde = advected(sp.gradient(s.lambda_tilde.values), none);
  d.mu = advected(sp.gradient(s.mu.values), none);

  // Momentum: u x w - grad(h + u^2/2) + T grad S + [(curl B) x B + B div B] / (mu0 rho)
  const Components omega = sp.curl(u);
  Components force = components(g);
  for_each_point(n, [&](std::size_t i) {
    const Vec3 uxw = cross3({u[0][i], u[1][i], u[2][i]}, {omega[0][i], omega[1][i], omega[2][i]});
    for (int a = 0; a < 3; ++a) force[a][i] = uxw[a] + th.T.values[i] * gradS[a][i];
  });

  const bool magnetic = s.magnetic();
  if (magnetic) {
    const auto& B = s.B.c;
    const Components J = sp.curl(B);
    const Array divB = sp.divergence(B);
    for_each_point(n, [&](std::size_t i) {
      const Vec3 b{B[0][i], B[1][i], B[2][i]};
      const Vec3 jxb = cross3({J[0][i], J[1][i], J[2][i]}, b);
      const double k = 1.0 / (mu0 * s.rho.values[i]);
      for (int a = 0; a < 3; ++a) force[a][i] += k * (jxb[a] + b[a] * divB[i]);
    });

    // Faraday: curl(u x B) - u div B
    Components uxb = components(g);
    Components udivb = components(g);
    for_each_point(n, [&](std::size_t i) {
      const Vec3 c = cross3({u[0][i], u[1][i], u[2][i]}, {B[0][i], B[1][i], B[2][i]});
      for (int a = 0; a < 3; ++a) {
        uxb[a][i] = c[a];
        udivb[a][i] = u[a][i] * divB[i];
      }
    });
    const Components curl_uxb = sp.curl(uxb, true);
    d.B = TwoForm(g);
    for (int a = 0; a < 3; ++a) {
      const Array ud = sp.dealiased(udivb[a]);
      for (std::size_t i = 0; i < n; ++i) d.B.c[a][i] = curl_uxb[a][i] - ud[i];
    }

    // Lie-dragged one-forms: u x curl V - grad(u.V) [- B / mu0 for Gamma]
    auto dragged = [&](const OneForm& v, bool gamma) {
      const Components cv = sp.curl(v.c);
      Components p = components(g);
      Array uv(n);
      for_each_point(n, [&](std::size_t i) {
        const Vec3 c = cross3({u[0][i], u[1][i], u[2][i]}, {cv[0][i], cv[1][i], cv[2][i]});
        for (int a = 0; a < 3; ++a) p[a][i] = c[a] - (gamma ? B[a][i] / mu0 : 0.0);
        uv[i] = u[0][i] * v.c[0][i] + u[1][i] * v.c[1][i] + u[2][i] * v.c[2][i];
      });
      const Components gu = sp.gradient(uv, true);
      OneForm out(g);
      for (int a = 0; a < 3; ++a) {
        const Array pa = sp.dealiased(p[a]);
        for (std::size_t i = 0; i < n; ++i) out.c[a][i] = pa[i] - gu[a][i];
      }
      return out;
    };
    d.Atilde = dragged(s.Atilde, false);
    d.Gamma = dragged(s.Gamma, true);
  } else {
    d.B = TwoForm(g);
    d.Atilde = OneForm(g);
    d.Gamma = OneForm(g);
  }

  {
    Array bern(n);
    for_each_point(n, [&](std::size_t i) {
      bern[i] = th.h.values[i] + 0.5 * (u[0][i] * u[0][i] + u[1][i] * u[1][i] + u[2][i] * u[2][i]);
    });
    const Components gb = sp.gradient(bern, true);
    d.u = VectorField(g);
    for (int a = 0; a < 3; ++a) {
      const Array fa = sp.dealiased(force[a]);
      for (std::size_t i = 0; i < n; ++i) d.u.c[a][i] = fa[i] - gb[a][i];
    }
  }
  return d;
}

MhdState axpy(const MhdState& s, double a, const StateDerivative& d, double time_step) {
  MhdState out = s;
  auto dst = evolved_arrays(out);
  const auto src = evolved_arrays(d);
  for (std::size_t k = 0; k < dst.size(); ++k) {
    Array& x = *dst[k];
    const Array& y = *src[k];
    for_each_point(x.size(), [&](std::size_t i) { x[i] += a * y[i]; });
  }
  out.t = s.t + time_step;
  return out;
}

MhdState step_rk4(const MhdState& s, double dt, StageStates* stages) {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorKind::kDomain, "step_rk4: dt must be positive");
  const StateDerivative k1 = rhs(s);
  MhdState s2 = axpy(s, 0.5 * dt, k1, 0.5 * dt);
  const StateDerivative k2 = rhs(s2);
  MhdState s3 = axpy(s, 0.5 * dt, k2, 0.5 * dt);
  const StateDerivative k3 = rhs(s3);
  MhdState s4 = axpy(s, dt, k3, dt);
  const StateDerivative k4 = rhs(s4);

  MhdState out = s;
  auto dst = evolved_arrays(out);
  const auto a1 = evolved_arrays(k1);
  const auto a2 = evolved_arrays(k2);
  const auto a3 = evolved_arrays(k3);
  const auto a4 = evolved_arrays(k4);
  const double w = dt / 6.0;
  for (std::size_t k = 0; k < dst.size(); ++k) {
    Array& x = *dst[k];
    const Array& y1 = *a1[k];
    const Array& y2 = *a2[k];
    const Array& y3 = *a3[k];
    const Array& y4 = *a4[k];
    for_each_point(x.size(), [&](std::size_t i) {
      x[i] += w * (y1[i] + 2.0 * y2[i] + 2.0 * y3[i] + y4[i]);
    });
  }
  out.t = s.t + dt;
  if (stages) *stages = {s, std::move(s2), std::move(s3), std::move(s4)};
  return out;
}

double cfl_dt(const MhdState& s, double cfl) {
  if (!(cfl > 0.0 && cfl < 1.0)) fail(ErrorKind::kConfig, "cfl must lie in (0, 1)");
  const ThermoFields th = eos_eval(s.rho, s.S, s.params.eos);
  const double gamma = s.params.eos.gamma;
  double vmax = 0.0;
  for (std::size_t i = 0; i < s.grid().size(); ++i) {
    const double rho = s.rho.values[i];
    const double speed = norm3(s.u.at(i)) + std::sqrt(gamma * th.p.values[i] / rho) +
                         norm3(s.B.at(i)) / std::sqrt(s.params.mu0 * rho);
    vmax = std::max(vmax, speed);
  }
  const double h = s.grid().min_spacing();
  if (!(vmax > 0.0)) return cfl * h;
  return cfl * h / vmax;
}

void check_health(const MhdState& s, double last_valid_time) {
  for (const Array* a : evolved_arrays(s)) {
    if (!all_finite(*a)) {
      std::ostringstream os;
      os << "blowup: non-finite values at t = " << s.t;
      throw BlowupError(os.str(), last_valid_time);
    }
  }
  for (double r : s.rho.values) {
    if (!(r > 0.0)) {
      std::ostringstream os;
      os << "blowup: non-positive density at t = " << s.t;
      throw BlowupError(os.str(), last_valid_time);
    }
  }
}

MhdState run(MhdState s, const RunOptions& opts, const Observer& observer, const StageHook& stage_hook,
             RunStats* stats) {
  if (!(opts.t_end >= s.t) || !std::isfinite(opts.t_end)) {
    fail(ErrorKind::kConfig, "run: t_end must not precede the state time");
  }
  if (opts.fixed_dt < 0.0) fail(ErrorKind::kConfig, "run: dt must be positive");
  RunStats local;
  RunStats& st = stats ? *stats : local;
  if (opts.t_end == s.t) return s;

  std::vector<double> targets;
  for (double t : opts.observe_times) {
    if (t > s.t && t < opts.t_end) targets.push_back(t);
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  targets.push_back(opts.t_end);

  StageStates stages;
  for (double target : targets) {
    while (s.t < target) {
      double dt = 0.0;
      try {
        dt = opts.fixed_dt > 0.0 ? opts.fixed_dt : cfl_dt(s, opts.cfl);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kDomain) throw BlowupError(e.what(), s.t);
        throw;
      }
      bool land = false;
      if (s.t + dt >= target - 1e-9 * dt) {
        dt = target - s.t;
        land = true;
      }
      const double last_valid = s.t;
      try {
        MhdState next = step_rk4(s, dt, stage_hook ? &stages : nullptr);
        if (land) next.t = target;
        check_health(next, last_valid);
        if (stage_hook) stage_hook(stages, dt);
        s = std::move(next);
      } catch (const BlowupError&) {
        throw;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kDomain) throw BlowupError(e.what(), last_valid);
        throw;
      }
      ++st.steps;
      st.last_dt = dt;
    }
    if (observer) observer(s);
  }
  return s;
}

}  // namespace liedrag
