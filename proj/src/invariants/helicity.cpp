// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "grid_calculus/calculus.hpp"
#include "invariants/invariants.hpp"

namespace liedrag {

namespace {

/// h - |u|^2/2
ScalarField bernoulli(const MhdState& s, const ThermoFields& th) {
  const ScalarField u2 = dot(s.u, s.u);
  return generate(s.grid(), [&](std::size_t i) { return th.h.values[i] - 0.5 * u2.values[i]; });
}

/// u D + c V
template <class T>
VectorField advective_flux(const VectorField& u, const ScalarField& D, const ScalarField& c, const Triple<T>& v) {
  return generate_components<VectorTag>(u.grid, [&](std::size_t i, int a) {
    return u.c[a][i] * D.values[i] + c.values[i] * v.c[a][i];
  });
}

double l2(const Array& a, const Array& b, const Array& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * a[i] + b[i] * b[i] + c[i] * c[i];
  return std::sqrt(s / static_cast<double>(a.size()));
}

template <class T>
double l2(const Triple<T>& v) {
  return l2(v.c[0], v.c[1], v.c[2]);
}

}  // namespace

double ConsLaw::integral() const { return volume_integral(density); }

ConsLaw fluid_helicity(const MhdState& s) {
  const ThermoFields th = eos_eval(s.rho, s.S, s.params.eos);
  const VectorField omega = curl<VectorTag>(s.u);
  const VectorField gS = grad(s.S);
  const VectorField gT = grad(th.T);
  ConsLaw law;
  law.name = "fluid_helicity";
  law.density = dot(s.u, omega);
  law.flux = advective_flux(s.u, law.density, bernoulli(s, th), omega);
  const ScalarField wS = dot(omega, gS);
  const ScalarField uTS = dot(s.u, cross<VectorTag>(gT, gS));
  law.source = generate(s.grid(), [&](std::size_t i) { return th.T.values[i] * wS.values[i] + uTS.values[i]; });
  return law;
}

ConsLaw cross_helicity(const MhdState& s) {
  const ThermoFields th = eos_eval(s.rho, s.S, s.params.eos);
  ConsLaw law;
  law.name = "cross_helicity";
  law.density = dot(s.u, s.B);
  law.flux = advective_flux(s.u, law.density, bernoulli(s, th), s.B);
  law.source = th.T * dot(s.B, grad(s.S));
  return law;
}

MagneticHelicity magnetic_helicity(const MhdState& s) {
  MagneticHelicity m;
  m.law.name = "magnetic_helicity";
  m.law.density = dot(s.Atilde, s.B);
  m.law.flux = scale(m.law.density, s.u);
  m.law.source = ScalarField(s.grid());
  const double hopf = volume_integral(dot(s.Atilde, curl<TwoFormTag>(s.Atilde)));
  m.hopf_defect = std::abs(hopf - m.law.integral());
  const TwoForm E = -cross<TwoFormTag>(s.u, s.B);
  m.max_e_dot_b = max_abs(dot(E, s.B));
  return m;
}

ScalarField ertel(const MhdState& s) {
  return dot(curl<VectorTag>(s.u), grad(s.S)) / s.rho;
}

VectorField magnetic_velocity(const MhdState& s) {
  const VectorField cg = curl<VectorTag>(s.Gamma);
  const VectorField cxb = cross<VectorTag>(cg, s.B);
  const ScalarField divB = div(s.B);
  return generate_components<VectorTag>(s.grid(), [&](std::size_t i, int a) {
    return -(cxb.c[a][i] + s.Gamma.c[a][i] * divB.values[i]) / s.rho.values[i];
  });
}

ErtelMhd ertel_mhd(const MhdState& s) {
  ErtelMhd e;
  e.u_M = magnetic_velocity(s);
  e.value = dot(curl<VectorTag>(s.u - e.u_M), grad(s.S)) / s.rho;
  return e;
}

ScalarField hollmann(const MhdState& s, bool mhd) {
  VectorField v = s.u - grad(s.phi);
  ScalarField ie;
  if (mhd) {
    const ErtelMhd e = ertel_mhd(s);
    v = v - e.u_M;
    ie = e.value;
  } else {
    ie = ertel(s);
  }
  return dot(v, cross<VectorTag>(grad(s.S), grad(ie))) / s.rho;
}

VectorField weber_w(const MhdState& s) {
  const VectorField gphi = grad(s.phi);
  const VectorField gS = grad(s.S);
  const VectorField uM = magnetic_velocity(s);
  return generate_components<VectorTag>(s.grid(), [&](std::size_t i, int a) {
    return s.u.c[a][i] - gphi.c[a][i] + s.r.values[i] * gS.c[a][i] - uM.c[a][i];
  });
}

ClebschCheck clebsch_velocity(const MhdState& s) {
  const VectorField gphi = grad(s.phi);
  const VectorField gS = grad(s.S);
  const VectorField gmu = grad(s.mu);
  const VectorField uM = magnetic_velocity(s);
  ClebschCheck c;
  const VectorField lgmu = scale(s.lambda_tilde, gmu);
  c.u_rec = generate_components<VectorTag>(s.grid(), [&](std::size_t i, int a) {
    return gphi.c[a][i] - s.r.values[i] * gS.c[a][i] - lgmu.c[a][i] + uM.c[a][i];
  });
  const VectorField diff = c.u_rec - s.u;
  constexpr double kFloor = 1e-12;
  c.velocity_residual = l2(diff) / std::max(l2(s.u), kFloor);
  // w + lt grad mu = u - u_rec
  c.weber_residual = l2(diff) / std::max(l2(lgmu), kFloor);
  return c;
}

NonlocalHelicity nonlocal_helicity(const MhdState& s) {
  const ThermoFields th = eos_eval(s.rho, s.S, s.params.eos);
  const VectorField omega = curl<VectorTag>(s.u);
  const VectorField gS = grad(s.S);
  const VectorField gr = grad(s.r);
  const VectorField gphi = grad(s.phi);
  const VectorField Omega = omega + cross<VectorTag>(gr, gS);
  const VectorField v = s.u + scale(s.r, gS);
  const ScalarField c = bernoulli(s, th);

  NonlocalHelicity n;
  n.law.name = "nonlocal_helicity";
  n.law.density = dot(Omega, v);
  n.law.flux = advective_flux(s.u, n.law.density, c, Omega);
  n.law.source = ScalarField(s.grid());

  n.potential_form.name = "nonlocal_helicity_potential";
  n.potential_form.density = dot(Omega, gphi);
  n.potential_form.flux = advective_flux(s.u, n.potential_form.density, c, Omega);
  n.potential_form.source = ScalarField(s.grid());

  // u.Omega + beta I_e with beta = r rho
  const ScalarField ie = dot(omega, gS) / s.rho;
  const ScalarField alt = dot(s.u, Omega) + (s.r * s.rho) * ie;
  const double dmax = std::max(max_abs(n.law.density), 1e-300);
  n.split_defect = max_abs(n.law.density - alt) / dmax;

  // Gas Weber one-form; any magnetic part is ignored here.
  const VectorField w = s.u - gphi + scale(s.r, gS);
  const ScalarField wo = dot(w, Omega);
  double scale_wo = 0.0;
  for (std::size_t i = 0; i < s.grid().size(); ++i) {
    scale_wo = std::max(scale_wo, norm3(w.at(i)) * norm3(Omega.at(i)));
  }
  n.w_dot_omega = max_abs(wo) / std::max(scale_wo, 1e-300);
  return n;
}

ConsLaw nonlocal_cross_helicity(const MhdState& s) {
  const ThermoFields th = eos_eval(s.rho, s.S, s.params.eos);
  const VectorField v = s.u + scale(s.r, grad(s.S));
  ConsLaw law;
  law.name = "nonlocal_cross_helicity";
  law.density = dot(s.B, v);
  law.flux = advective_flux(s.u, law.density, bernoulli(s, th), s.B);
  law.source = ScalarField(s.grid());
  return law;
}

double total_energy(const MhdState& s) {
  const ThermoFields th = eos_eval(s.rho, s.S, s.params.eos);
  const ScalarField u2 = dot(s.u, s.u);
  const ScalarField b2 = dot(s.B, s.B);
  const double mu0 = s.params.mu0;
  return volume_integral(generate(s.grid(), [&](std::size_t i) {
    return 0.5 * s.rho.values[i] * u2.values[i] + th.eps.values[i] + 0.5 * b2.values[i] / mu0;
  }));
}

}  // namespace liedrag
