// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

namespace liedrag {

using Index3 = std::array<int, 3>;
using Vec3 = std::array<double, 3>;

/// Uniform triply periodic lattice. Storage is row-major with z fastest:
/// flat index = (i * ny + j) * nz + k.
class Grid {
 public:
  static constexpr double kTwoPi = 2.0 * std::numbers::pi;

  Grid() : Grid(Index3{32, 32, 32}) {}
  explicit Grid(Index3 n, Vec3 length = {kTwoPi, kTwoPi, kTwoPi},
                double dealias_fraction = 2.0 / 3.0);

  const Index3& n() const { return n_; }
  const Vec3& length() const { return length_; }
  double dealias_fraction() const { return dealias_fraction_; }

  std::size_t size() const {
    return static_cast<std::size_t>(n_[0]) * static_cast<std::size_t>(n_[1]) *
           static_cast<std::size_t>(n_[2]);
  }
  double spacing(int axis) const { return length_[axis] / n_[axis]; }
  double min_spacing() const;
  double cell_volume() const { return spacing(0) * spacing(1) * spacing(2); }
  double volume() const { return length_[0] * length_[1] * length_[2]; }

  std::size_t flat(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_[1] + j) * n_[2] + k;
  }
  Index3 unflat(std::size_t idx) const {
    const int k = static_cast<int>(idx % n_[2]);
    const std::size_t ij = idx / n_[2];
    return {static_cast<int>(ij / n_[1]), static_cast<int>(ij % n_[1]), k};
  }
  double coord(int axis, int index) const { return index * spacing(axis); }
  Vec3 position(std::size_t idx) const {
    const Index3 ijk = unflat(idx);
    return {coord(0, ijk[0]), coord(1, ijk[1]), coord(2, ijk[2])};
  }

  /// Largest retained |mode number| per axis under the dealiasing rule.
  int dealias_cutoff(int axis) const;

  std::string describe() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_ == b.n_ && a.length_ == b.length_ && a.dealias_fraction_ == b.dealias_fraction_;
  }

 private:
  Index3 n_;
  Vec3 length_;
  double dealias_fraction_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* op);

}  // namespace liedrag
