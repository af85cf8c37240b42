// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dynamics/integrator.hpp"

namespace liedrag {

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 identity3();
double det3(const Mat3& m);
Mat3 matmul3(const Mat3& a, const Mat3& b);
Vec3 matvec3(const Mat3& a, const Vec3& v);

/// Values of a named diagnostic at the given positions of a state.
using PointSampler = std::function<std::vector<double>(const MhdState&, const std::vector<Vec3>&)>;
using SamplerTable = std::map<std::string, PointSampler>;

/// Extra quantity integrated in time along each trajectory.
struct Integrand {
  std::string name;
  std::function<ScalarField(const MhdState&)> field;
};

/// Passive Lagrangian tracers. x0 are the labels; deform holds x_ij = dx^i/dx0^j.
struct ParticleSet {
  std::vector<Vec3> x0;
  std::vector<Vec3> x;
  std::vector<Mat3> deform;
  std::vector<double> acc_r;     // r0(x0) - int T dt
  std::vector<double> acc_phi;   // phi0(x0) + int (u^2/2 - h) dt
  std::map<std::string, std::vector<double>> accumulators;
  std::map<std::string, std::vector<double>> samples0;
  std::map<std::string, double> scale0;   // max |field| over the grid at seeding

  std::size_t size() const { return x.size(); }
};

/// Seed at explicit positions (wrapped into the box). Every name in
/// `diagnostics` must exist in `samplers`; samplers also report the t=0
/// grid-wide scale through `field_scale`.
ParticleSet seed_particles(const MhdState& s, const std::vector<Vec3>& positions,
                           const SamplerTable& samplers = {},
                           const std::vector<std::string>& diagnostics = {},
                           const std::function<double(const MhdState&, const std::string&)>& field_scale = {});

/// Uniformly random positions from a fixed-seed generator.
std::vector<Vec3> random_positions(const Grid& g, std::size_t count, std::uint64_t seed);

class Interpolant;

/// Interpolants of everything the tracer equations need from one state:
/// u, grad u, T, u^2/2 - h and any extra integrands.
class TracerFields {
 public:
  TracerFields(const MhdState& s, const std::vector<Integrand>& integrands = {});
  ~TracerFields();
  TracerFields(TracerFields&&) noexcept;

  Vec3 velocity(const Vec3& x) const;
  Mat3 velocity_gradient(const Vec3& x) const;
  double temperature(const Vec3& x) const;
  double bernoulli_source(const Vec3& x) const;   // u^2/2 - h
  double extra(std::size_t e, const Vec3& x) const;
  std::size_t extra_count() const;
  double time() const { return t_; }

 private:
  double t_;
  std::vector<Interpolant> in_;
};

using StageFields = std::array<const TracerFields*, 4>;

/// Advance tracers across one RK4 step from interpolants of its stage states.
ParticleSet advance_particles(const ParticleSet& p, const StageFields& stages, double dt,
                              const std::vector<std::string>& integrand_names = {});

/// Advance tracers across one RK4 step whose stage states are given. Position,
/// deformation gradient and the accumulators are integrated with the same
/// four-stage scheme, so the quadrature weights are Simpson's. Throws
/// BlowupError naming the particle if det(deform) <= 0.
ParticleSet advance_particles(const ParticleSet& p, const StageStates& stages, double dt,
                              const std::vector<Integrand>& integrands = {});

struct CauchyResult {
  std::vector<Vec3> B;
  std::vector<double> rho;
};

/// B^i = x_ij B0^j / J and rho = rho0 / J.
CauchyResult cauchy_B(const ParticleSet& p, const std::vector<Vec3>& B0_at_labels,
                      const std::vector<double>& rho0_at_labels);

struct DriftStats {
  double max = 0.0;
  double rms = 0.0;
};

/// |value(t) - value(0)| over particles, normalized by the t=0 grid maximum.
DriftStats advected_scalar_drift(const ParticleSet& p, const std::string& name,
                                 const std::vector<double>& current);

}  // namespace liedrag
