// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>

#include "grid_calculus/calculus.hpp"
#include "invariants/invariants.hpp"

namespace liedrag {

namespace {

void check_spacing(const std::vector<double>& times, double dt_obs, const char* op) {
  if (times.size() < 3) fail(ErrorKind::kConfig, std::string(op) + ": need at least 3 snapshots");
  if (!(dt_obs > 0.0)) fail(ErrorKind::kConfig, std::string(op) + ": dt_obs must be positive");
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double gap = times[k] - times[k - 1];
    if (std::abs(gap - dt_obs) > 1e-9 * dt_obs) {
      std::ostringstream os;
      os << op << ": irregular spacing " << gap << " between snapshots " << k - 1 << " and " << k
         << " (expected " << dt_obs << ")";
      fail(ErrorKind::kConfig, os.str());
    }
  }
}

std::vector<const Array*> arrays(const FormField& f) {
  return std::visit(
      [](const auto& x) -> std::vector<const Array*> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ScalarField>) {
          return {&x.values};
        } else if constexpr (std::is_same_v<T, ThreeForm>) {
          return {&x.density};
        } else {
          return {&x.c[0], &x.c[1], &x.c[2]};
        }
      },
      f);
}

/// Norms of the pointwise residual sum_c r_c^2, normalized by the L2 of the reference.
ResidualNorms norms(const std::vector<Array>& r, const std::vector<const Array*>& ref, double floor) {
  const std::size_t n = r.front().size();
  double ss = 0.0;
  double sr = 0.0;
  double mx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = 0.0;
    double q = 0.0;
    for (std::size_t c = 0; c < r.size(); ++c) {
      e += r[c][i] * r[c][i];
      q += (*ref[c])[i] * (*ref[c])[i];
    }
    ss += e;
    sr += q;
    mx = std::max(mx, std::sqrt(e));
  }
  const double scale = std::max(std::sqrt(sr / static_cast<double>(n)), floor);
  return {std::sqrt(ss / static_cast<double>(n)) / scale, mx / scale};
}

}  // namespace

ResidualNorms conservation_residual(const std::vector<LawSnapshot>& series, double dt_obs, double floor) {
  std::vector<double> times;
  for (const LawSnapshot& s : series) times.push_back(s.t);
  check_spacing(times, dt_obs, "conservation_residual");
  const Grid& g = series.front().law.density.grid;
  for (const LawSnapshot& s : series) {
    require_same_grid(g, s.law.density.grid, "conservation_residual");
    require_same_grid(g, s.law.flux.grid, "conservation_residual");
    require_same_grid(g, s.law.source.grid, "conservation_residual");
  }
  ResidualNorms worst;
  for (std::size_t k = 1; k + 1 < series.size(); ++k) {
    const ConsLaw& prev = series[k - 1].law;
    const ConsLaw& mid = series[k].law;
    const ConsLaw& next = series[k + 1].law;
    const ScalarField divF = div(mid.flux);
    std::vector<Array> r(1, Array(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i) {
      r[0][i] = (next.density.values[i] - prev.density.values[i]) / (2.0 * dt_obs) + divF.values[i] -
                mid.source.values[i];
    }
    const ResidualNorms n = norms(r, {&divF.values}, floor);
    worst.l2 = std::max(worst.l2, n.l2);
    worst.linf = std::max(worst.linf, n.linf);
  }
  return worst;
}

ResidualNorms advection_residual(const std::vector<FormSnapshot>& series, double dt_obs, double floor) {
  std::vector<double> times;
  for (const FormSnapshot& s : series) times.push_back(s.t);
  check_spacing(times, dt_obs, "advection_residual");
  const int rank = rank_of(series.front().form);
  for (const FormSnapshot& s : series) {
    if (rank_of(s.form) != rank) fail(ErrorKind::kConfig, "advection_residual: mixed form ranks");
    require_same_grid(grid_of(series.front().form), grid_of(s.form), "advection_residual");
  }
  ResidualNorms worst;
  for (std::size_t k = 1; k + 1 < series.size(); ++k) {
    const FormField lie = lie_direct(series[k].u, series[k].form);
    const auto prev = arrays(series[k - 1].form);
    const auto next = arrays(series[k + 1].form);
    const auto l = arrays(lie);
    std::vector<Array> r(l.size(), Array(l.front()->size()));
    for (std::size_t c = 0; c < l.size(); ++c) {
      for (std::size_t i = 0; i < r[c].size(); ++i) {
        r[c][i] = ((*next[c])[i] - (*prev[c])[i]) / (2.0 * dt_obs) + (*l[c])[i];
      }
    }
    const ResidualNorms n = norms(r, l, floor);
    worst.l2 = std::max(worst.l2, n.l2);
    worst.linf = std::max(worst.linf, n.linf);
  }
  return worst;
}

}  // namespace liedrag
