// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grid_calculus/fields.hpp"

namespace liedrag {

/// Gamma-law gas with an explicit entropy factor:
///   eps(rho, S) = p0 / ((gamma - 1) rho0^gamma) * rho^gamma * exp((S - S0) / cv)
struct EosParams {
  double gamma = 5.0 / 3.0;
  double rho0 = 1.0;
  double p0 = 1.0;
  double cv = 1.0;
  double S0 = 0.0;

  void validate() const;
  double prefactor() const;

  bool operator==(const EosParams&) const = default;
};

struct ThermoPoint {
  double eps;
  double p;
  double T;
  double h;
};

struct ThermoFields {
  ScalarField eps;
  ScalarField p;
  ScalarField T;
  ScalarField h;
};

ThermoPoint eos_eval(double rho, double S, const EosParams& params);
ThermoFields eos_eval(const ScalarField& rho, const ScalarField& S, const EosParams& params);

/// Squared adiabatic sound speed gamma p / rho.
double sound_speed2(double rho, double p, const EosParams& params);

/// Largest |T dS - dh + dp/rho| over centered probes along rho, along S and
/// along both together, divided by 2 delta h so it is dimensionless. Steps are
/// delta * rho and delta * cv; the result is O(delta^2).
double first_law_residual(double rho, double S, const EosParams& params, double delta = 1e-5);

}  // namespace liedrag
