// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "grid_calculus/fields.hpp"

namespace liedrag {

/// Map a position into [0, L) on every axis.
Vec3 wrap_position(const Grid& g, const Vec3& x);

/// Tricubic Hermite interpolant. Nodal slopes and cross derivatives come from
/// spectral differentiation, so nodal values are reproduced exactly and the
/// error is O(h^4) for smooth fields.
class Interpolant {
 public:
  explicit Interpolant(const ScalarField& f);
  double operator()(const Vec3& x) const;
  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  std::array<Array, 8> d_;
};

std::vector<double> interpolate(const ScalarField& f, const std::vector<Vec3>& positions);

template <class Tag>
std::vector<Vec3> interpolate(const Triple<Tag>& v, const std::vector<Vec3>& positions) {
  std::vector<Vec3> out(positions.size());
  for (int a = 0; a < 3; ++a) {
    const Interpolant in(v.component(a));
    for (std::size_t p = 0; p < positions.size(); ++p) out[p][a] = in(positions[p]);
  }
  return out;
}

}  // namespace liedrag
