// SPDX-License-Identifier: Apache-2.0

#include "grid_calculus/forms.hpp"

#include "grid_calculus/calculus.hpp"

namespace liedrag {

int rank_of(const FormField& f) { return static_cast<int>(f.index()); }

const Grid& grid_of(const FormField& f) {
  return std::visit([](const auto& x) -> const Grid& { return x.grid; }, f);
}

OneForm d0(const ScalarField& f) { return grad<OneFormTag>(f); }

TwoForm d1(const OneForm& a) { return curl<TwoFormTag>(a); }

ThreeForm d2(const TwoForm& b) { return ThreeForm(div(b)); }

TwoForm wedge11(const OneForm& a, const OneForm& b) { return cross<TwoFormTag>(a, b); }

ThreeForm wedge12(const OneForm& a, const TwoForm& b) { return ThreeForm(dot(a, b)); }

ScalarField interior1(const VectorField& x, const OneForm& a) { return dot(x, a); }

OneForm interior2(const VectorField& x, const TwoForm& b) {
  require_same_grid(x.grid, b.grid, "interior2");
  return generate_triple<OneFormTag>(x.grid, [&](std::size_t i) {
    const Vec3 c = cross3(x.at(i), b.at(i));
    return Vec3{-c[0], -c[1], -c[2]};
  });
}

TwoForm interior3(const VectorField& x, const ThreeForm& t) {
  require_same_grid(x.grid, t.grid, "interior3");
  return retag<TwoFormTag>(scale(t.as_scalar(), x));
}

// --- direct formulas -------------------------------------------------------

ScalarField lie_direct(const VectorField& u, const ScalarField& f) {
  require_same_grid(u.grid, f.grid, "lie_direct");
  return advect(u, f);
}

OneForm lie_direct(const VectorField& u, const OneForm& a) {
  require_same_grid(u.grid, a.grid, "lie_direct");
  const auto w = curl<VectorTag>(a);
  const auto uxw = cross<OneFormTag>(u, w);
  const auto g = grad<OneFormTag>(dot(u, a));
  return g - uxw;
}

TwoForm lie_direct(const VectorField& u, const TwoForm& b) {
  require_same_grid(u.grid, b.grid, "lie_direct");
  const auto uxb = cross<VectorTag>(u, b);
  const auto c = curl<TwoFormTag>(uxb);
  const auto udivb = retag<TwoFormTag>(scale(div(b), u));
  return udivb - c;
}

ThreeForm lie_direct(const VectorField& u, const ThreeForm& t) {
  require_same_grid(u.grid, t.grid, "lie_direct");
  return ThreeForm(div(scale(t.as_scalar(), u)));
}

FormField lie_direct(const VectorField& u, const FormField& w) {
  return std::visit([&](const auto& x) -> FormField { return lie_direct(u, x); }, w);
}

// --- Cartan composition ----------------------------------------------------

ScalarField lie_cartan(const VectorField& u, const ScalarField& f) { return interior1(u, d0(f)); }

OneForm lie_cartan(const VectorField& u, const OneForm& a) {
  return interior2(u, d1(a)) + d0(interior1(u, a));
}

TwoForm lie_cartan(const VectorField& u, const TwoForm& b) {
  return interior3(u, d2(b)) + d1(interior2(u, b));
}

ThreeForm lie_cartan(const VectorField& u, const ThreeForm& t) { return d2(interior3(u, t)); }

FormField lie_cartan(const VectorField& u, const FormField& w) {
  return std::visit([&](const auto& x) -> FormField { return lie_cartan(u, x); }, w);
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_grid(x.grid, y.grid, "lie_bracket");
  return advect_vector<VectorTag>(x, y) - advect_vector<VectorTag>(y, x);
}

double volume_integral(const Array& values, const Grid& g) {
  // Neumaier summation; the order is fixed so results do not depend on threads.
  double s = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double t = s + v;
    comp += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  return (s + comp) * g.cell_volume();
}

double volume_integral(const ScalarField& f) { return volume_integral(f.values, f.grid); }

double volume_integral(const ThreeForm& t) { return volume_integral(t.density, t.grid); }

}  // namespace liedrag
