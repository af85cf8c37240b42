// SPDX-License-Identifier: Apache-2.0

#include "dynamics/state.hpp"

#include <sstream>

#include "grid_calculus/calculus.hpp"

namespace liedrag {

void MhdParams::validate() const {
  eos.validate();
  if (!(mu0 > 0.0) || !std::isfinite(mu0)) fail(ErrorKind::kConfig, "eos.mu0 must be > 0");
}

MhdState MhdState::uniform(const Grid& g, const MhdParams& params) {
  MhdState s;
  s.rho = ScalarField(g, params.eos.rho0);
  s.u = VectorField(g);
  s.S = ScalarField(g, params.eos.S0);
  s.B = TwoForm(g);
  s.Atilde = OneForm(g);
  s.Gamma = OneForm(g);
  s.phi = ScalarField(g);
  s.r = ScalarField(g);
  s.lambda_tilde = ScalarField(g);
  s.mu = ScalarField(g);
  s.params = params;
  return s;
}

bool MhdState::magnetic() const {
  return max_abs(B) > 0.0 || max_abs(Atilde) > 0.0 || max_abs(Gamma) > 0.0;
}

void MhdState::validate() const {
  params.validate();
  const Grid& g = grid();
  const Grid* grids[] = {&u.grid, &S.grid, &B.grid, &Atilde.grid, &Gamma.grid,
                         &phi.grid, &r.grid, &lambda_tilde.grid, &mu.grid};
  for (const Grid* o : grids) require_same_grid(g, *o, "MhdState");
  for (const Array* a : evolved_arrays(*this)) {
    if (a->size() != g.size()) fail(ErrorKind::kInternal, "MhdState: field size mismatch");
    if (!all_finite(*a)) fail(ErrorKind::kDomain, "MhdState: non-finite values");
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(rho.values[i] > 0.0)) {
      const Index3 ijk = g.unflat(i);
      std::ostringstream os;
      os << "MhdState: non-positive density at grid point (" << ijk[0] << ", " << ijk[1] << ", " << ijk[2]
         << ")";
      fail(ErrorKind::kDomain, os.str());
    }
  }
}

namespace {

template <class S, class P>
std::vector<P> collect(S& s) {
  return {&s.rho.values,      &s.u.c[0],      &s.u.c[1],      &s.u.c[2],      &s.S.values,
          &s.B.c[0],          &s.B.c[1],      &s.B.c[2],      &s.Atilde.c[0], &s.Atilde.c[1],
          &s.Atilde.c[2],     &s.Gamma.c[0],  &s.Gamma.c[1],  &s.Gamma.c[2],  &s.phi.values,
          &s.r.values,        &s.lambda_tilde.values,         &s.mu.values};
}

}  // namespace

std::vector<Array*> evolved_arrays(MhdState& s) { return collect<MhdState, Array*>(s); }
std::vector<const Array*> evolved_arrays(const MhdState& s) {
  return collect<const MhdState, const Array*>(s);
}
std::vector<Array*> evolved_arrays(StateDerivative& d) { return collect<StateDerivative, Array*>(d); }
std::vector<const Array*> evolved_arrays(const StateDerivative& d) {
  return collect<const StateDerivative, const Array*>(d);
}

MhdState dealiased(const MhdState& s) {
  MhdState out = s;
  const Spectral sp(s.grid());
  for (Array* a : evolved_arrays(out)) *a = sp.dealiased(*a);
  return out;
}

}  // namespace liedrag
