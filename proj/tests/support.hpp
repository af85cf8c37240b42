// SPDX-License-Identifier: Apache-2.0
// Shared helpers for the unit and acceptance tests.

#pragma once

#include <cstdint>

#include "grid_calculus/fields.hpp"
#include "grid_calculus/spectral.hpp"

namespace liedrag::testing {

template <class F>
ScalarField sample(const Grid& g, F&& f) {
  return generate(g, [&](std::size_t i) {
    const Vec3 x = g.position(i);
    return f(x[0], x[1], x[2]);
  });
}

template <class Tag, class F>
Triple<Tag> sample_triple(const Grid& g, F&& f) {
  return generate_triple<Tag>(g, [&](std::size_t i) {
    const Vec3 x = g.position(i);
    return f(x[0], x[1], x[2]);
  });
}

template <class Tag>
Triple<Tag> random_triple(const Grid& g, int max_mode, std::uint64_t seed) {
  return Triple<Tag>(random_band_limited(g, max_mode, seed), random_band_limited(g, max_mode, seed + 1),
                     random_band_limited(g, max_mode, seed + 2));
}

inline Vec3 abc(double x, double y, double z) {
  return {std::sin(z) + std::cos(y), std::sin(x) + std::cos(z), std::sin(y) + std::cos(x)};
}

inline double max_diff(const Array& a, const Array& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <class A, class B>
double max_diff(const Triple<A>& a, const Triple<B>& b) {
  return std::max({max_diff(a.c[0], b.c[0]), max_diff(a.c[1], b.c[1]), max_diff(a.c[2], b.c[2])});
}

}  // namespace liedrag::testing
