// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "grid_calculus/calculus.hpp"
#include "invariants/invariants.hpp"

namespace liedrag {

GodbillonVey godbillon_vey(const MhdState& s, const GvOptions& opts) {
  const Grid& g = s.grid();
  const OneForm& A = s.Atilde;
  const ScalarField a2 = dot(A, A);
  std::size_t worst = 0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (a2.values[i] < a2.values[worst]) worst = i;
  }
  if (!(std::sqrt(a2.values[worst]) >= opts.floor)) {
    const Index3 p = g.unflat(worst);
    std::ostringstream os;
    os << "godbillon_vey: |A| = " << std::sqrt(a2.values[worst]) << " below floor " << opts.floor << " at ("
       << p[0] << ", " << p[1] << ", " << p[2] << ")";
    fail(ErrorKind::kDomain, os.str());
  }

  GodbillonVey gv;
  const TwoForm B = d1(A);
  gv.eta = divide(cross<VectorTag>(A, B), a2);
  gv.defect = max_abs(dot(A, B));
  if (gv.defect > opts.tolerance) {
    std::ostringstream os;
    os << "integrability defect max|A.curl A| = " << gv.defect << " exceeds " << opts.tolerance
       << "; the Godbillon-Vey invariant is undefined for this state";
    gv.warnings.push_back(os.str());
  }

  // curl A - eta x A is the part of B along A; its perpendicular remainder
  // measures how well eta solves the integrability equation.
  const VectorField exa = cross<VectorTag>(gv.eta, A);
  double full = 0.0;
  double perp = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 a = A.at(i);
    Vec3 r = B.at(i);
    for (int c = 0; c < 3; ++c) r[c] -= exa.c[c][i];
    full = std::max(full, norm3(r));
    const double along = dot3(r, a) / a2.values[i];
    for (int c = 0; c < 3; ++c) r[c] -= along * a[c];
    perp = std::max(perp, norm3(r));
  }
  gv.integrability = full;
  gv.integrability_perp = perp;

  // Lie derivatives of eta and A as one-forms carry the u.grad and (grad u)^T terms.
  const OneForm eta1 = retag<OneFormTag>(gv.eta);
  const OneForm le = lie_direct(s.u, eta1);
  const OneForm la = lie_direct(s.u, A);
  gv.alpha = (dot(A, le) + dot(eta1, la)) / a2;

  gv.psi = dot(gv.eta, curl<VectorTag>(gv.eta));
  gv.Ig = volume_integral(gv.psi);

  gv.law.name = "godbillon_vey";
  gv.law.density = gv.psi;
  gv.law.flux = generate_components<VectorTag>(g, [&](std::size_t i, int c) {
    return s.u.c[c][i] * gv.psi.values[i] + gv.alpha.values[i] * s.B.c[c][i];
  });
  gv.law.source = ScalarField(g);
  return gv;
}

}  // namespace liedrag
