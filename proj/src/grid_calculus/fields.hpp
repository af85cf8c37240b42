// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "common/error.hpp"
#include "grid_calculus/grid.hpp"

namespace liedrag {

using Array = std::vector<double>;

/// 0-form or advected scalar sampled on the grid.
struct ScalarField {
  Grid grid;
  Array values;

  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}
  ScalarField(const Grid& g, Array v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) fail(ErrorKind::kInternal, "ScalarField: size mismatch");
  }

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

/// 3-form f dx^dy^dz. Kept distinct from ScalarField so rank stays explicit.
struct ThreeForm {
  Grid grid;
  Array density;

  ThreeForm() = default;
  explicit ThreeForm(const Grid& g, double fill = 0.0) : grid(g), density(g.size(), fill) {}
  ThreeForm(const Grid& g, Array v) : grid(g), density(std::move(v)) {
    if (density.size() != grid.size()) fail(ErrorKind::kInternal, "ThreeForm: size mismatch");
  }
  explicit ThreeForm(const ScalarField& f) : grid(f.grid), density(f.values) {}

  std::size_t size() const { return density.size(); }
  ScalarField as_scalar() const { return ScalarField(grid, density); }
};

struct VectorTag {};
struct OneFormTag {};
struct TwoFormTag {};

/// Three-component field. The tag separates contravariant vectors, 1-forms
/// and 2-forms; with the Euclidean metric their components coincide.
template <class Tag>
struct Triple {
  Grid grid;
  std::array<Array, 3> c;

  Triple() = default;
  explicit Triple(const Grid& g, Vec3 fill = {0.0, 0.0, 0.0}) : grid(g) {
    for (int a = 0; a < 3; ++a) c[a].assign(g.size(), fill[a]);
  }
  Triple(const Grid& g, Array x, Array y, Array z)
      : grid(g), c{std::move(x), std::move(y), std::move(z)} {
    for (int a = 0; a < 3; ++a) {
      if (c[a].size() != grid.size()) fail(ErrorKind::kInternal, "Triple: size mismatch");
    }
  }
  Triple(const ScalarField& x, const ScalarField& y, const ScalarField& z)
      : Triple(x.grid, x.values, y.values, z.values) {}

  std::size_t size() const { return grid.size(); }
  ScalarField component(int a) const { return ScalarField(grid, c[a]); }
  Vec3 at(std::size_t i) const { return {c[0][i], c[1][i], c[2][i]}; }
  void set(std::size_t i, const Vec3& v) {
    c[0][i] = v[0];
    c[1][i] = v[1];
    c[2][i] = v[2];
  }
};

using VectorField = Triple<VectorTag>;
using OneForm = Triple<OneFormTag>;
using TwoForm = Triple<TwoFormTag>;

/// Reinterpret components under the identity metric (e.g. u as u.dx).
template <class To, class From>
Triple<To> retag(const Triple<From>& f) {
  Triple<To> out;
  out.grid = f.grid;
  out.c = f.c;
  return out;
}
template <class To, class From>
Triple<To> retag(Triple<From>&& f) {
  Triple<To> out;
  out.grid = f.grid;
  out.c = std::move(f.c);
  return out;
}

// ---------------------------------------------------------------------------
// Pointwise kernels. Results never alias inputs.

template <class F>
void for_each_point(std::size_t n, F&& f) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) f(static_cast<std::size_t>(i));
}

template <class F>
ScalarField generate(const Grid& g, F&& f) {
  ScalarField out(g);
  for_each_point(g.size(), [&](std::size_t i) { out.values[i] = f(i); });
  return out;
}

template <class Tag, class F>
Triple<Tag> generate_triple(const Grid& g, F&& f) {
  Triple<Tag> out(g);
  for_each_point(g.size(), [&](std::size_t i) { out.set(i, f(i)); });
  return out;
}

/// Componentwise variant: f(i, a) gives component a at point i.
template <class Tag, class F>
Triple<Tag> generate_components(const Grid& g, F&& f) {
  Triple<Tag> out(g);
  for_each_point(g.size(), [&](std::size_t i) {
    for (int a = 0; a < 3; ++a) out.c[a][i] = f(i, a);
  });
  return out;
}

inline Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

template <class A, class B>
ScalarField dot(const Triple<A>& a, const Triple<B>& b) {
  require_same_grid(a.grid, b.grid, "dot");
  return generate(a.grid, [&](std::size_t i) {
    return a.c[0][i] * b.c[0][i] + a.c[1][i] * b.c[1][i] + a.c[2][i] * b.c[2][i];
  });
}

template <class R, class A, class B>
Triple<R> cross(const Triple<A>& a, const Triple<B>& b) {
  require_same_grid(a.grid, b.grid, "cross");
  return generate_triple<R>(a.grid, [&](std::size_t i) { return cross3(a.at(i), b.at(i)); });
}

template <class Tag>
Triple<Tag> scale(const ScalarField& s, const Triple<Tag>& v) {
  require_same_grid(s.grid, v.grid, "scale");
  return generate_triple<Tag>(v.grid, [&](std::size_t i) {
    const double f = s.values[i];
    return Vec3{f * v.c[0][i], f * v.c[1][i], f * v.c[2][i]};
  });
}

template <class Tag>
Triple<Tag> scale(double f, const Triple<Tag>& v) {
  return generate_triple<Tag>(v.grid, [&](std::size_t i) {
    return Vec3{f * v.c[0][i], f * v.c[1][i], f * v.c[2][i]};
  });
}

template <class Tag>
Triple<Tag> divide(const Triple<Tag>& v, const ScalarField& s) {
  require_same_grid(s.grid, v.grid, "divide");
  return generate_triple<Tag>(v.grid, [&](std::size_t i) {
    const double f = 1.0 / s.values[i];
    return Vec3{f * v.c[0][i], f * v.c[1][i], f * v.c[2][i]};
  });
}

template <class Tag>
Triple<Tag> operator+(const Triple<Tag>& a, const Triple<Tag>& b) {
  require_same_grid(a.grid, b.grid, "add");
  return generate_triple<Tag>(a.grid, [&](std::size_t i) {
    return Vec3{a.c[0][i] + b.c[0][i], a.c[1][i] + b.c[1][i], a.c[2][i] + b.c[2][i]};
  });
}
template <class Tag>
Triple<Tag> operator-(const Triple<Tag>& a, const Triple<Tag>& b) {
  require_same_grid(a.grid, b.grid, "subtract");
  return generate_triple<Tag>(a.grid, [&](std::size_t i) {
    return Vec3{a.c[0][i] - b.c[0][i], a.c[1][i] - b.c[1][i], a.c[2][i] - b.c[2][i]};
  });
}
template <class Tag>
Triple<Tag> operator-(const Triple<Tag>& a) {
  return scale(-1.0, a);
}

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid, b.grid, "add");
  return generate(a.grid, [&](std::size_t i) { return a.values[i] + b.values[i]; });
}
inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid, b.grid, "subtract");
  return generate(a.grid, [&](std::size_t i) { return a.values[i] - b.values[i]; });
}
inline ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid, b.grid, "multiply");
  return generate(a.grid, [&](std::size_t i) { return a.values[i] * b.values[i]; });
}
inline ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid, b.grid, "divide");
  return generate(a.grid, [&](std::size_t i) { return a.values[i] / b.values[i]; });
}
inline ScalarField operator*(double f, const ScalarField& a) {
  return generate(a.grid, [&](std::size_t i) { return f * a.values[i]; });
}
inline ScalarField operator-(const ScalarField& a) { return -1.0 * a; }

// ---------------------------------------------------------------------------
// Norms. Reductions run sequentially in storage order so results are
// reproducible regardless of thread count.

inline double max_abs(const Array& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}
inline double max_abs(const ScalarField& f) { return max_abs(f.values); }
inline double max_abs(const ThreeForm& f) { return max_abs(f.density); }
template <class Tag>
double max_abs(const Triple<Tag>& f) {
  return std::max({max_abs(f.c[0]), max_abs(f.c[1]), max_abs(f.c[2])});
}

/// Root-mean-square over grid points.
inline double rms(const Array& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s / static_cast<double>(a.size()));
}
inline double rms(const ScalarField& f) { return rms(f.values); }
inline double rms(const ThreeForm& f) { return rms(f.density); }
/// RMS of the pointwise Euclidean magnitude.
template <class Tag>
double rms(const Triple<Tag>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    s += f.c[0][i] * f.c[0][i] + f.c[1][i] * f.c[1][i] + f.c[2][i] * f.c[2][i];
  }
  return std::sqrt(s / static_cast<double>(f.size()));
}
/// Largest pointwise Euclidean magnitude.
template <class Tag>
double max_norm(const Triple<Tag>& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, norm3(f.at(i)));
  return m;
}

inline bool all_finite(const Array& a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace liedrag
