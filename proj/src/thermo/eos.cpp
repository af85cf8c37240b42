// SPDX-License-Identifier: Apache-2.0

#include "thermo/eos.hpp"

#include <sstream>

namespace liedrag {

void EosParams::validate() const {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) fail(ErrorKind::kConfig, "eos.gamma must be > 1");
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) fail(ErrorKind::kConfig, "eos.rho0 must be > 0");
  if (!(p0 > 0.0) || !std::isfinite(p0)) fail(ErrorKind::kConfig, "eos.p0 must be > 0");
  if (!(cv > 0.0) || !std::isfinite(cv)) fail(ErrorKind::kConfig, "eos.cv must be > 0");
  if (!std::isfinite(S0)) fail(ErrorKind::kConfig, "eos.S0 must be finite");
}

double EosParams::prefactor() const { return p0 / ((gamma - 1.0) * std::pow(rho0, gamma)); }

ThermoPoint eos_eval(double rho, double S, const EosParams& params) {
  if (!(rho > 0.0)) {
    std::ostringstream os;
    os << "eos: non-positive density " << rho;
    fail(ErrorKind::kDomain, os.str());
  }
  const double eps = params.prefactor() * std::pow(rho, params.gamma) * std::exp((S - params.S0) / params.cv);
  return {eps, (params.gamma - 1.0) * eps, eps / (params.cv * rho), params.gamma * eps / rho};
}

ThermoFields eos_eval(const ScalarField& rho, const ScalarField& S, const EosParams& params) {
  require_same_grid(rho.grid, S.grid, "eos_eval");
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho.values[i] > 0.0)) {
      const Index3 ijk = rho.grid.unflat(i);
      std::ostringstream os;
      os << "eos: non-positive density " << rho.values[i] << " at grid point (" << ijk[0] << ", "
         << ijk[1] << ", " << ijk[2] << ")";
      fail(ErrorKind::kDomain, os.str());
    }
  }
  const Grid& g = rho.grid;
  ThermoFields out{ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g)};
  const double k = params.prefactor();
  for_each_point(g.size(), [&](std::size_t i) {
    const double r = rho.values[i];
    const double eps = k * std::pow(r, params.gamma) * std::exp((S.values[i] - params.S0) / params.cv);
    out.eps.values[i] = eps;
    out.p.values[i] = (params.gamma - 1.0) * eps;
    out.T.values[i] = eps / (params.cv * r);
    out.h.values[i] = params.gamma * eps / r;
  });
  return out;
}

double sound_speed2(double rho, double p, const EosParams& params) { return params.gamma * p / rho; }

double first_law_residual(double rho, double S, const EosParams& params, double delta) {
  const ThermoPoint c = eos_eval(rho, S, params);
  const double dr = delta * rho;
  const double ds = delta * params.cv;
  const double probes[3][2] = {{dr, 0.0}, {0.0, ds}, {dr, ds}};
  double worst = 0.0;
  for (const auto& pr : probes) {
    const ThermoPoint hi = eos_eval(rho + pr[0], S + pr[1], params);
    const ThermoPoint lo = eos_eval(rho - pr[0], S - pr[1], params);
    const double res = c.T * (2.0 * pr[1]) - (hi.h - lo.h) + (hi.p - lo.p) / rho;
    worst = std::max(worst, std::abs(res) / (2.0 * delta * c.h));
  }
  return worst;
}

}  // namespace liedrag
