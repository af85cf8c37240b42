// SPDX-License-Identifier: Apache-2.0

#include "grid_calculus/interpolate.hpp"

#include "grid_calculus/spectral.hpp"

namespace liedrag {

Vec3 wrap_position(const Grid& g, const Vec3& x) {
  Vec3 out{};
  for (int a = 0; a < 3; ++a) {
    const double L = g.length()[a];
    double v = std::fmod(x[a], L);
    if (v < 0.0) v += L;
    if (v >= L) v -= L;
    out[a] = v;
  }
  return out;
}

Interpolant::Interpolant(const ScalarField& f)
    : grid_(f.grid), d_(Spectral(f.grid).hermite_derivatives(f.values)) {}

double Interpolant::operator()(const Vec3& xin) const {
  if (!std::isfinite(xin[0]) || !std::isfinite(xin[1]) || !std::isfinite(xin[2])) {
    fail(ErrorKind::kDomain, "interpolate: non-finite position");
  }
  const Vec3 x = wrap_position(grid_, xin);
  const Index3& n = grid_.n();
  std::array<std::array<int, 2>, 3> node{};
  // weight[a][corner][deriv]
  double weight[3][2][2];
  for (int a = 0; a < 3; ++a) {
    const double h = grid_.spacing(a);
    const double xs = x[a] / h;
    int i0 = static_cast<int>(std::floor(xs));
    double s = xs - i0;
    if (i0 >= n[a]) {
      i0 -= n[a];
    }
    node[a] = {i0, (i0 + 1) % n[a]};
    const double s2 = s * s;
    const double s3 = s2 * s;
    weight[a][0][0] = 2.0 * s3 - 3.0 * s2 + 1.0;
    weight[a][0][1] = h * (s3 - 2.0 * s2 + s);
    weight[a][1][0] = -2.0 * s3 + 3.0 * s2;
    weight[a][1][1] = h * (s3 - s2);
  }
  double acc = 0.0;
  for (int cx = 0; cx < 2; ++cx) {
    for (int cy = 0; cy < 2; ++cy) {
      for (int cz = 0; cz < 2; ++cz) {
        const std::size_t idx = grid_.flat(node[0][cx], node[1][cy], node[2][cz]);
        for (int mask = 0; mask < 8; ++mask) {
          const int dx = mask & 1;
          const int dy = (mask >> 1) & 1;
          const int dz = (mask >> 2) & 1;
          acc += weight[0][cx][dx] * weight[1][cy][dy] * weight[2][cz][dz] * d_[mask][idx];
        }
      }
    }
  }
  return acc;
}

std::vector<double> interpolate(const ScalarField& f, const std::vector<Vec3>& positions) {
  const Interpolant in(f);
  std::vector<double> out(positions.size());
  for (std::size_t p = 0; p < positions.size(); ++p) out[p] = in(positions[p]);
  return out;
}

}  // namespace liedrag
