// SPDX-License-Identifier: Apache-2.0

#include "grid_calculus/grid.hpp"

#include <algorithm>
#include <sstream>

#include "common/error.hpp"

namespace liedrag {

Grid::Grid(Index3 n, Vec3 length, double dealias_fraction)
    : n_(n), length_(length), dealias_fraction_(dealias_fraction) {
  for (int a = 0; a < 3; ++a) {
    if (n_[a] < 8 || n_[a] % 2 != 0) {
      fail(ErrorKind::kConfig, "grid: n[" + std::to_string(a) + "] = " + std::to_string(n_[a]) +
                                   " must be even and >= 8");
    }
    if (!(length_[a] > 0.0) || !std::isfinite(length_[a])) {
      fail(ErrorKind::kConfig, "grid: length[" + std::to_string(a) + "] must be positive");
    }
    const double h = length_[a] / n_[a];
    if (!(h > 0.0) || !std::isfinite(h)) fail(ErrorKind::kConfig, "grid: degenerate spacing");
  }
  if (!(dealias_fraction_ > 0.0 && dealias_fraction_ <= 1.0)) {
    fail(ErrorKind::kConfig, "grid: dealias_fraction must lie in (0, 1]");
  }
}

double Grid::min_spacing() const { return std::min({spacing(0), spacing(1), spacing(2)}); }

int Grid::dealias_cutoff(int axis) const {
  // A small epsilon keeps 2/3 * 16 = 10.666.. from being perturbed by rounding.
  return static_cast<int>(std::floor(dealias_fraction_ * (n_[axis] / 2) + 1e-9));
}

std::string Grid::describe() const {
  std::ostringstream os;
  os << n_[0] << "x" << n_[1] << "x" << n_[2] << " box " << length_[0] << "x" << length_[1]
     << "x" << length_[2];
  return os.str();
}

void require_same_grid(const Grid& a, const Grid& b, const char* op) {
  if (!(a == b)) {
    fail(ErrorKind::kGridMismatch,
         std::string(op) + ": grid mismatch (" + a.describe() + " vs " + b.describe() + ")");
  }
}

}  // namespace liedrag
