// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <numbers>

#include "grid_calculus/calculus.hpp"
#include "grid_calculus/forms.hpp"
#include "grid_calculus/interpolate.hpp"
#include "support.hpp"

using namespace liedrag;
using namespace liedrag::testing;

namespace {

const Grid g32;

template <class T>
double rel_linf(const T& a, const T& b) {
  double scale = std::max(max_abs(a), max_abs(b));
  return max_diff(a, b) / std::max(scale, 1e-300);
}

double rel_linf(const ScalarField& a, const ScalarField& b) {
  return max_diff(a.values, b.values) / std::max({max_abs(a), max_abs(b), 1e-300});
}
double rel_linf(const ThreeForm& a, const ThreeForm& b) {
  return max_diff(a.density, b.density) / std::max({max_abs(a), max_abs(b), 1e-300});
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid({7, 8, 8}), Error);
  CHECK_THROWS_AS(Grid({8, 8, 6}), Error);
  CHECK_THROWS_AS(Grid({8, 8, 8}, {1.0, -1.0, 1.0}), Error);
  CHECK_THROWS_AS(Grid({8, 8, 8}, {1.0, 1.0, 1.0}, 0.0), Error);
  CHECK(g32.dealias_cutoff(0) == 10);
  const Grid g({8, 16, 10}, {1.0, 2.0, 3.0});
  CHECK(g.spacing(1) == doctest::Approx(0.125));
  CHECK(g.unflat(g.flat(3, 11, 7)) == Index3{3, 11, 7});
}

TEST_CASE("d0 of constants and of sin x") {
  const auto c = d0(ScalarField(g32, 3.0));
  CHECK(max_abs(c) < 1e-14);
  const auto g = d0(sample(g32, [](double x, double, double) { return std::sin(x); }));
  const auto expect = sample_triple<OneFormTag>(g32, [](double x, double, double) {
    return Vec3{std::cos(x), 0.0, 0.0};
  });
  CHECK(max_diff(g, expect) < 1e-12);
}

TEST_CASE("d1 examples") {
  const auto a = sample_triple<OneFormTag>(g32, [](double x, double, double) { return Vec3{0, 0, std::sin(x)}; });
  const auto expect =
      sample_triple<TwoFormTag>(g32, [](double x, double, double) { return Vec3{0, -std::cos(x), 0}; });
  CHECK(max_diff(d1(a), expect) < 1e-12);

  const auto u = sample_triple<OneFormTag>(g32, abc);
  CHECK(max_diff(d1(u), u) < 1e-12);
}

TEST_CASE("d2 examples") {
  const TwoForm c(g32, Vec3{1.0, -2.0, 0.5});
  CHECK(max_abs(d2(c)) < 1e-14);
  const auto b = sample_triple<TwoFormTag>(g32, [](double x, double, double) { return Vec3{std::sin(x), 0, 0}; });
  const auto expect = sample(g32, [](double x, double, double) { return std::cos(x); });
  CHECK(max_diff(d2(b).density, expect.values) < 1e-12);
}

TEST_CASE("dd = 0 on random band-limited fields") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = random_band_limited(g32, 6, seed);
    CHECK(max_abs(d1(d0(f))) < 1e-12);
    const auto a = random_triple<OneFormTag>(g32, 6, 100 + seed);
    CHECK(max_abs(d2(d1(a))) < 1e-12);
    CHECK(std::abs(volume_integral(d2(random_triple<TwoFormTag>(g32, 6, 200 + seed)))) < 1e-12);
  }
}

TEST_CASE("wedge products") {
  const OneForm ex(g32, Vec3{1, 0, 0});
  const OneForm ey(g32, Vec3{0, 1, 0});
  CHECK(max_diff(wedge11(ex, ey), TwoForm(g32, Vec3{0, 0, 1})) == 0.0);
  CHECK(max_abs(wedge12(ex, retag<TwoFormTag>(ey))) == 0.0);

  const auto a = random_triple<OneFormTag>(g32, 5, 11);
  const auto b = random_triple<OneFormTag>(g32, 5, 21);
  CHECK(max_abs(wedge11(a, a)) == 0.0);
  const auto ab = wedge11(a, b);
  const auto ba = wedge11(b, a);
  CHECK(max_diff(ab, -ba) == 0.0);
  // Componentwise oracle.
  double err = 0.0;
  for (std::size_t i = 0; i < g32.size(); ++i) {
    const double ox = a.c[1][i] * b.c[2][i] - a.c[2][i] * b.c[1][i];
    const double oy = a.c[2][i] * b.c[0][i] - a.c[0][i] * b.c[2][i];
    const double oz = a.c[0][i] * b.c[1][i] - a.c[1][i] * b.c[0][i];
    err = std::max({err, std::abs(ab.c[0][i] - ox), std::abs(ab.c[1][i] - oy), std::abs(ab.c[2][i] - oz)});
  }
  CHECK(err == 0.0);

  const auto u = sample_triple<OneFormTag>(g32, abc);
  const auto hel = wedge12(u, d1(u));
  CHECK(max_diff(hel.density, dot(u, u).values) < 1e-11);

  const auto af = sample_triple<OneFormTag>(g32, [](double x, double y, double) {
    return Vec3{0, 0, 2.0 + std::cos(x) * std::cos(y)};
  });
  CHECK(max_abs(wedge12(af, d1(af))) < 1e-13);
}

TEST_CASE("interior products") {
  const VectorField ex(g32, Vec3{1, 0, 0});
  CHECK(max_abs(interior1(ex, OneForm(g32, Vec3{0, 1, 0}))) == 0.0);
  CHECK(max_diff(interior2(ex, TwoForm(g32, Vec3{0, 1, 0})), OneForm(g32, Vec3{0, 0, -1})) == 0.0);

  const auto x = random_triple<VectorTag>(g32, 5, 31);
  const auto a = random_triple<OneFormTag>(g32, 5, 41);
  const auto s = interior1(x, a);
  double err = 0.0;
  for (std::size_t i = 0; i < g32.size(); ++i) {
    const double o = x.c[0][i] * a.c[0][i] + x.c[1][i] * a.c[1][i] + x.c[2][i] * a.c[2][i];
    err = std::max(err, std::abs(s.values[i] - o));
  }
  CHECK(err == 0.0);
  CHECK(max_diff(interior1(x, retag<OneFormTag>(x)).values, dot(x, x).values) == 0.0);

  // X parallel to B gives zero.
  const auto b = retag<TwoFormTag>(scale(random_band_limited(g32, 4, 7), x));
  CHECK(max_abs(interior2(x, b)) < 1e-14);
  const auto i2 = interior2(x, retag<TwoFormTag>(a));
  double err2 = 0.0;
  for (std::size_t i = 0; i < g32.size(); ++i) {
    const double ox = -(x.c[1][i] * a.c[2][i] - x.c[2][i] * a.c[1][i]);
    err2 = std::max(err2, std::abs(i2.c[0][i] - ox));
  }
  CHECK(err2 == 0.0);

  CHECK(max_diff(interior3(x, ThreeForm(g32, 1.0)), retag<TwoFormTag>(x)) == 0.0);
  CHECK(max_abs(interior3(VectorField(g32), ThreeForm(random_band_limited(g32, 4, 3)))) == 0.0);

  // d2(X _| rho) against the multiply-then-divergence oracle.
  const auto rho = ThreeForm(random_band_limited(g32, 4, 9));
  const auto lhs = d2(interior3(x, rho));
  ScalarField oracle(g32);
  for (int c = 0; c < 3; ++c) {
    Array prod(g32.size());
    for (std::size_t i = 0; i < g32.size(); ++i) prod[i] = rho.density[i] * x.c[c][i];
    const Array dc = Spectral(g32).derivative(prod, c);
    for (std::size_t i = 0; i < g32.size(); ++i) oracle.values[i] += dc[i];
  }
  CHECK(max_diff(lhs.density, oracle.values) < 1e-11);

  // Leibniz: X _| (a ^ b) = (X _| a) b - a (X _| b)
  const auto bb = random_triple<OneFormTag>(g32, 5, 51);
  const auto left = interior2(x, wedge11(a, bb));
  const auto right = scale(interior1(x, a), bb) - scale(interior1(x, bb), a);
  CHECK(max_diff(left, right) < 1e-12);
}

TEST_CASE("lie_direct examples") {
  const auto u = random_triple<VectorTag>(g32, 5, 61);
  CHECK(max_abs(lie_direct(u, ScalarField(g32, 2.0))) < 1e-13);
  const VectorField uc(g32, Vec3{0.7, 0, 0});
  const auto f = sample(g32, [](double x, double, double) { return std::sin(x); });
  const auto expect = sample(g32, [](double x, double, double) { return 0.7 * std::cos(x); });
  CHECK(max_diff(lie_direct(uc, f).values, expect.values) < 1e-13);

  // u = B with solenoidal B: both rank-2 terms vanish.
  const auto a = random_triple<OneFormTag>(g32, 4, 71);
  const auto b = d1(a);
  CHECK(max_abs(lie_direct(retag<VectorTag>(b), b)) < 1e-10 * max_abs(b) * max_abs(b));
}

TEST_CASE("Cartan formula agrees with direct formulas for every rank") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto u = random_triple<VectorTag>(g32, 4, 1000 * seed);
    const auto f = random_band_limited(g32, 4, 1000 * seed + 10);
    const auto a = random_triple<OneFormTag>(g32, 4, 1000 * seed + 20);
    const auto b = random_triple<TwoFormTag>(g32, 4, 1000 * seed + 30);
    const auto t = ThreeForm(random_band_limited(g32, 4, 1000 * seed + 40));
    CHECK(rel_linf(lie_cartan(u, f), lie_direct(u, f)) <= 1e-10);
    CHECK(rel_linf(lie_cartan(u, a), lie_direct(u, a)) <= 1e-10);
    CHECK(rel_linf(lie_cartan(u, b), lie_direct(u, b)) <= 1e-10);
    CHECK(rel_linf(lie_cartan(u, t), lie_direct(u, t)) <= 1e-10);

    const FormField wf = b;
    const FormField r = lie_cartan(u, wf);
    CHECK(rank_of(r) == 2);
  }
  const VectorField zero(g32);
  const auto a = random_triple<OneFormTag>(g32, 4, 5);
  CHECK(max_abs(lie_cartan(zero, a)) == 0.0);
  CHECK(max_abs(lie_cartan(zero, d1(a))) == 0.0);
  CHECK(max_abs(lie_cartan(zero, ThreeForm(g32, 1.0))) == 0.0);
  CHECK(max_abs(lie_cartan(random_triple<VectorTag>(g32, 4, 9), ScalarField(g32, 4.0))) < 1e-13);
}

TEST_CASE("Lie bracket antisymmetry and Jacobi identity") {
  const auto x = random_triple<VectorTag>(g32, 3, 301);
  const auto y = random_triple<VectorTag>(g32, 3, 311);
  const auto z = random_triple<VectorTag>(g32, 3, 321);
  CHECK(max_abs(lie_bracket(x, x)) == 0.0);
  CHECK(max_diff(lie_bracket(x, y), -lie_bracket(y, x)) == 0.0);
  CHECK(max_abs(lie_bracket(VectorField(g32, Vec3{1, 2, 3}), VectorField(g32, Vec3{-1, 0, 5}))) == 0.0);
  const auto jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                   lie_bracket(z, lie_bracket(x, y));
  CHECK(max_norm(jac) < 1e-9);
}

TEST_CASE("volume integrals") {
  const double v = std::pow(2.0 * std::numbers::pi, 3);
  CHECK(volume_integral(ThreeForm(g32, 1.0)) == doctest::Approx(248.0502134423986).epsilon(1e-14));
  CHECK(std::abs(volume_integral(sample(g32, [](double x, double, double) { return std::sin(x); }))) < 1e-12);
  const auto u = sample_triple<VectorTag>(g32, abc);
  CHECK(volume_integral(dot(u, u)) == doctest::Approx(3.0 * v).epsilon(1e-13));
  CHECK(3.0 * v == doctest::Approx(744.1507).epsilon(1e-7));
}

TEST_CASE("grid mismatch is reported") {
  const Grid g16({16, 16, 16});
  CHECK_THROWS_AS(wedge11(OneForm(g32), OneForm(g16)), Error);
  try {
    interior1(VectorField(g32), OneForm(g16));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kGridMismatch);
  }
}

TEST_CASE("tricubic interpolation") {
  CHECK(interpolate(ScalarField(g32, 1.25), {{0.3, 4.0, -2.0}})[0] == doctest::Approx(1.25).epsilon(1e-14));
  const auto f = sample(g32, [](double x, double, double) { return std::sin(x); });
  const double pi = std::numbers::pi;
  const double v = interpolate(f, {{pi / 3.0, 1.1, 2.3}})[0];
  CHECK(std::abs(v - std::sin(pi / 3.0)) < 1e-5);

  const auto r = random_band_limited(g32, 6, 77);
  std::vector<Vec3> nodes;
  std::vector<double> expect;
  for (std::size_t idx : {std::size_t{0}, std::size_t{1234}, std::size_t{32767}, std::size_t{20000}}) {
    nodes.push_back(g32.position(idx));
    expect.push_back(r.values[idx]);
  }
  const auto got = interpolate(r, nodes);
  for (std::size_t p = 0; p < got.size(); ++p) CHECK(std::abs(got[p] - expect[p]) < 1e-13);

  // Periodic wrap: shifting by whole box lengths changes nothing.
  const double a = interpolate(r, {{1.0, 2.0, 3.0}})[0];
  const double b = interpolate(r, {{1.0 + 2 * pi, 2.0 - 4 * pi, 3.0 + 6 * pi}})[0];
  CHECK(std::abs(a - b) < 1e-12);

  // Fourth-order convergence on a smooth field.
  auto err_at = [&](int n) {
    const Grid g({n, n, n});
    const auto h = sample(g, [](double x, double y, double z) { return std::sin(x + 0.3) * std::cos(y) * std::sin(2 * z); });
    double e = 0.0;
    for (int p = 0; p < 20; ++p) {
      const Vec3 q{0.37 * p, 1.3 + 0.11 * p, 0.05 + 0.29 * p};
      e = std::max(e, std::abs(interpolate(h, {q})[0] - std::sin(q[0] + 0.3) * std::cos(q[1]) * std::sin(2 * q[2])));
    }
    return e;
  };
  const double e16 = err_at(16);
  const double e32 = err_at(32);
  CHECK(e16 / e32 > 10.0);
}
