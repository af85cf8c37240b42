// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "grid_calculus/fields.hpp"
#include "thermo/eos.hpp"

namespace liedrag {

struct MhdParams {
  EosParams eos;
  double mu0 = 1.0;

  void validate() const;
  bool operator==(const MhdParams&) const = default;
};

/// Full dynamical state: gas, magnetic field, advected-gauge potential,
/// Gamma potential and the Clebsch scalars (r = beta/rho, lambda_tilde =
/// lambda/rho).
struct MhdState {
  double t = 0.0;
  ScalarField rho;
  VectorField u;
  ScalarField S;
  TwoForm B;
  OneForm Atilde;
  OneForm Gamma;
  ScalarField phi;
  ScalarField r;
  ScalarField lambda_tilde;
  ScalarField mu;
  MhdParams params;

  /// Zero-initialized fields on g with rho = params.eos.rho0.
  static MhdState uniform(const Grid& g, const MhdParams& params);

  const Grid& grid() const { return rho.grid; }
  /// True when any of B, Atilde, Gamma is nonzero.
  bool magnetic() const;
  /// Checks grid agreement, finiteness and rho > 0.
  void validate() const;
};

/// Time derivative of every evolved field of MhdState.
struct StateDerivative {
  ScalarField rho;
  VectorField u;
  ScalarField S;
  TwoForm B;
  OneForm Atilde;
  OneForm Gamma;
  ScalarField phi;
  ScalarField r;
  ScalarField lambda_tilde;
  ScalarField mu;
};

/// Pointers to every evolved array, in a fixed order.
std::vector<Array*> evolved_arrays(MhdState& s);
std::vector<const Array*> evolved_arrays(const MhdState& s);
std::vector<Array*> evolved_arrays(StateDerivative& d);
std::vector<const Array*> evolved_arrays(const StateDerivative& d);

/// Truncate every evolved field to the retained mode cube.
MhdState dealiased(const MhdState& s);

}  // namespace liedrag
