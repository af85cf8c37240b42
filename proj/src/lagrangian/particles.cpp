// SPDX-License-Identifier: Apache-2.0

#include "lagrangian/particles.hpp"

#include <random>
#include <sstream>

#include "grid_calculus/calculus.hpp"
#include "grid_calculus/interpolate.hpp"

namespace liedrag {

Mat3 identity3() { return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}; }

double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 matmul3(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  }
  return c;
}

Vec3 matvec3(const Mat3& a, const Vec3& v) {
  return {a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2], a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
          a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2]};
}

std::vector<Vec3> random_positions(const Grid& g, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec3> out(count);
  for (Vec3& p : out) {
    for (int a = 0; a < 3; ++a) p[a] = static_cast<double>(rng() >> 11) * 0x1.0p-53 * g.length()[a];
  }
  return out;
}

ParticleSet seed_particles(const MhdState& s, const std::vector<Vec3>& positions, const SamplerTable& samplers,
                           const std::vector<std::string>& diagnostics,
                           const std::function<double(const MhdState&, const std::string&)>& field_scale) {
  ParticleSet p;
  for (const Vec3& q : positions) {
    for (double c : q) {
      if (!std::isfinite(c)) fail(ErrorKind::kConfig, "seed_particles: non-finite position");
    }
    p.x0.push_back(wrap_position(s.grid(), q));
  }
  p.x = p.x0;
  p.deform.assign(p.size(), identity3());
  p.acc_r = interpolate(s.r, p.x0);
  p.acc_phi = interpolate(s.phi, p.x0);
  for (const std::string& name : diagnostics) {
    auto it = samplers.find(name);
    if (it == samplers.end()) fail(ErrorKind::kConfig, "seed_particles: unknown diagnostic '" + name + "'");
    p.samples0[name] = it->second(s, p.x0);
    p.scale0[name] = field_scale ? field_scale(s, name) : 1.0;
  }
  return p;
}

// Interpolant slots: u (3), grad u (9, row-major d_j u^i), T, u^2/2 - h, extras.
TracerFields::TracerFields(const MhdState& s, const std::vector<Integrand>& integrands) : t_(s.t) {
  in_.reserve(14 + integrands.size());
  for (int a = 0; a < 3; ++a) in_.emplace_back(s.u.component(a));
  const auto jac = jacobian(s.u);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) in_.emplace_back(jac[i][j]);
  }
  const ThermoFields th = eos_eval(s.rho, s.S, s.params.eos);
  const ScalarField u2 = dot(s.u, s.u);
  in_.emplace_back(th.T);
  in_.emplace_back(generate(s.grid(), [&](std::size_t i) { return 0.5 * u2.values[i] - th.h.values[i]; }));
  for (const Integrand& in : integrands) in_.emplace_back(in.field(s));
}

TracerFields::~TracerFields() = default;
TracerFields::TracerFields(TracerFields&&) noexcept = default;

Vec3 TracerFields::velocity(const Vec3& x) const { return {in_[0](x), in_[1](x), in_[2](x)}; }

Mat3 TracerFields::velocity_gradient(const Vec3& x) const {
  Mat3 m{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = in_[3 + 3 * i + j](x);
  }
  return m;
}

double TracerFields::temperature(const Vec3& x) const { return in_[12](x); }
double TracerFields::bernoulli_source(const Vec3& x) const { return in_[13](x); }
double TracerFields::extra(std::size_t e, const Vec3& x) const { return in_[14 + e](x); }
std::size_t TracerFields::extra_count() const { return in_.size() - 14; }

ParticleSet advance_particles(const ParticleSet& p, const StageFields& stages, double dt,
                              const std::vector<std::string>& integrand_names) {
  static constexpr double kC[4] = {0.0, 0.5, 0.5, 1.0};
  static constexpr double kW[4] = {1.0, 2.0, 2.0, 1.0};
  const std::size_t ne = integrand_names.size();
  for (const TracerFields* f : stages) {
    if (f->extra_count() != ne) fail(ErrorKind::kInternal, "advance_particles: integrand count mismatch");
  }
  ParticleSet out = p;
  for (const std::string& name : integrand_names) out.accumulators[name].resize(p.size(), 0.0);

  const std::size_t np = p.size();
  for (std::size_t n = 0; n < np; ++n) {
    Vec3 kprev{};
    Mat3 lprev{};
    Vec3 xsum{};
    Mat3 fsum{};
    double rsum = 0.0;
    double phisum = 0.0;
    std::vector<double> esum(ne, 0.0);
    for (int q = 0; q < 4; ++q) {
      const TracerFields& sf = *stages[q];
      Vec3 xq = p.x[n];
      Mat3 gq = p.deform[n];
      for (int a = 0; a < 3; ++a) {
        xq[a] += kC[q] * dt * kprev[a];
        for (int b = 0; b < 3; ++b) gq[a][b] += kC[q] * dt * lprev[a][b];
      }
      const Vec3 uq = sf.velocity(xq);
      const Mat3 lq = matmul3(sf.velocity_gradient(xq), gq);
      for (int a = 0; a < 3; ++a) {
        xsum[a] += kW[q] * uq[a];
        for (int b = 0; b < 3; ++b) fsum[a][b] += kW[q] * lq[a][b];
      }
      rsum -= kW[q] * sf.temperature(xq);
      phisum += kW[q] * sf.bernoulli_source(xq);
      for (std::size_t e = 0; e < ne; ++e) esum[e] += kW[q] * sf.extra(e, xq);
      kprev = uq;
      lprev = lq;
    }
    const double w = dt / 6.0;
    for (int a = 0; a < 3; ++a) {
      out.x[n][a] += w * xsum[a];
      for (int b = 0; b < 3; ++b) out.deform[n][a][b] += w * fsum[a][b];
    }
    out.acc_r[n] += w * rsum;
    out.acc_phi[n] += w * phisum;
    for (std::size_t e = 0; e < ne; ++e) out.accumulators[integrand_names[e]][n] += w * esum[e];

    const double J = det3(out.deform[n]);
    if (!(J > 0.0) || !std::isfinite(out.x[n][0] + out.x[n][1] + out.x[n][2])) {
      std::ostringstream os;
      os << "lagrangian map degenerate for particle " << n << " (label " << p.x0[n][0] << ", " << p.x0[n][1]
         << ", " << p.x0[n][2] << "): det = " << J << "; under-resolved flow";
      throw BlowupError(os.str(), stages[0]->time());
    }
  }
  return out;
}

ParticleSet advance_particles(const ParticleSet& p, const StageStates& stages, double dt,
                              const std::vector<Integrand>& integrands) {
  std::vector<TracerFields> fields;
  fields.reserve(4);
  for (const MhdState& s : stages) fields.emplace_back(s, integrands);
  std::vector<std::string> names;
  for (const Integrand& in : integrands) names.push_back(in.name);
  return advance_particles(p, StageFields{&fields[0], &fields[1], &fields[2], &fields[3]}, dt, names);
}

CauchyResult cauchy_B(const ParticleSet& p, const std::vector<Vec3>& B0_at_labels,
                      const std::vector<double>& rho0_at_labels) {
  if (B0_at_labels.size() != p.size() || rho0_at_labels.size() != p.size()) {
    fail(ErrorKind::kConfig, "cauchy_B: label data size mismatch");
  }
  CauchyResult r;
  r.B.resize(p.size());
  r.rho.resize(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double J = det3(p.deform[n]);
    if (!(J > 0.0)) {
      throw BlowupError("cauchy_B: det(deform) <= 0 for particle " + std::to_string(n), 0.0);
    }
    const Vec3 fb = matvec3(p.deform[n], B0_at_labels[n]);
    for (int a = 0; a < 3; ++a) r.B[n][a] = fb[a] / J;
    r.rho[n] = rho0_at_labels[n] / J;
  }
  return r;
}

DriftStats advected_scalar_drift(const ParticleSet& p, const std::string& name,
                                 const std::vector<double>& current) {
  auto it = p.samples0.find(name);
  if (it == p.samples0.end()) fail(ErrorKind::kConfig, "drift: no t=0 samples for '" + name + "'");
  const std::vector<double>& v0 = it->second;
  if (current.size() != v0.size()) fail(ErrorKind::kConfig, "drift: sample count mismatch for '" + name + "'");
  auto sc = p.scale0.find(name);
  const double scale = std::max(sc == p.scale0.end() ? 1.0 : sc->second, 1e-300);
  DriftStats d;
  double ss = 0.0;
  for (std::size_t n = 0; n < v0.size(); ++n) {
    const double e = std::abs(current[n] - v0[n]);
    d.max = std::max(d.max, e);
    ss += e * e;
  }
  d.max /= scale;
  d.rms = v0.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(v0.size())) / scale;
  return d;
}

}  // namespace liedrag
