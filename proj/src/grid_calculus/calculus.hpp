// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grid_calculus/fields.hpp"
#include "grid_calculus/spectral.hpp"

namespace liedrag {

// Vector-calculus helpers in component form. `dealias` truncates the result
// to the retained mode cube; diagnostics leave it off.

template <class R = VectorTag>
Triple<R> grad(const ScalarField& f, bool dealias = false) {
  auto g = Spectral(f.grid).gradient(f.values, dealias);
  return Triple<R>(f.grid, std::move(g[0]), std::move(g[1]), std::move(g[2]));
}

template <class R, class T>
Triple<R> curl(const Triple<T>& v, bool dealias = false) {
  auto c = Spectral(v.grid).curl(v.c, dealias);
  return Triple<R>(v.grid, std::move(c[0]), std::move(c[1]), std::move(c[2]));
}

template <class T>
ScalarField div(const Triple<T>& v, bool dealias = false) {
  return ScalarField(v.grid, Spectral(v.grid).divergence(v.c, dealias));
}

inline ScalarField partial(const ScalarField& f, int axis) {
  return ScalarField(f.grid, Spectral(f.grid).derivative(f.values, axis));
}

/// Full velocity-gradient tensor, out[i][j] = d_j u^i.
template <class T>
std::array<std::array<ScalarField, 3>, 3> jacobian(const Triple<T>& u) {
  const Spectral sp(u.grid);
  std::array<std::array<ScalarField, 3>, 3> out;
  for (int i = 0; i < 3; ++i) {
    auto g = sp.gradient(u.c[i]);
    for (int j = 0; j < 3; ++j) out[i][j] = ScalarField(u.grid, std::move(g[j]));
  }
  return out;
}

/// u . grad f
template <class T>
ScalarField advect(const Triple<T>& u, const ScalarField& f) {
  require_same_grid(u.grid, f.grid, "advect");
  return dot(u, grad(f));
}

/// (u . grad) v, componentwise.
template <class R, class T, class V>
Triple<R> advect_vector(const Triple<T>& u, const Triple<V>& v) {
  require_same_grid(u.grid, v.grid, "advect_vector");
  Triple<R> out(u.grid);
  for (int a = 0; a < 3; ++a) out.c[a] = dot(u, grad(v.component(a))).values;
  return out;
}

inline ScalarField dealias(const ScalarField& f) {
  return ScalarField(f.grid, Spectral(f.grid).dealiased(f.values));
}

template <class T>
Triple<T> dealias(const Triple<T>& v) {
  const Spectral sp(v.grid);
  return Triple<T>(v.grid, sp.dealiased(v.c[0]), sp.dealiased(v.c[1]), sp.dealiased(v.c[2]));
}

}  // namespace liedrag
