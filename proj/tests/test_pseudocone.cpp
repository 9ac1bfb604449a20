#include <doctest.h>

#include <cmath>

#include "copolar/error.hpp"
#include "copolar/pseudocone.hpp"

using namespace copolar;

namespace {

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("hyperbola radial, support and gauge") {
  const PseudoCone k = hyperbola(1.0);
  // t^2 w1 w2 = 1 on the boundary.
  CHECK(radial(k, v({1, 1})) == doctest::Approx(1.0));
  CHECK(radial(k, v({2, 0.5})) == doctest::Approx(1.0));
  CHECK(radial(k, v({1, 4})) == doctest::Approx(0.5));
  CHECK(gauge(k, v({2, 2})) == doctest::Approx(2.0));
  // min <u, x> over xy = 1 is 2 sqrt(u1 u2) for u > 0.
  CHECK(support(k, v({-1, -1})) == doctest::Approx(-2.0));
  CHECK(support(k, v({-1, -4})) == doctest::Approx(-4.0));
  CHECK(support_numeric(k, v({-1, -4})) == doctest::Approx(-4.0).epsilon(1e-10));
  CHECK(std::isinf(support(k, v({1, -1}))));
  CHECK(radial(k, v({3, 1})) * radial(k, v({1, 3})) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(radial(k, v({1, -1})), Error);
}

TEST_CASE("copolar of the hyperbola is the quarter-scaled hyperbola") {
  const PseudoCone ks = copolar::copolar(hyperbola(1.0));
  // K* = {u < 0 : u1 u2 >= 1/4}.
  CHECK(radial(ks, v({-1, -1})) == doctest::Approx(0.5));
  CHECK(member(ks, v({-0.5, -0.5})));
  CHECK_FALSE(member(ks, v({-0.4, -0.5})));
  CHECK(support(ks, v({1, 1})) == doctest::Approx(-1.0));
}

TEST_CASE("calabi family point values") {
  const PseudoCone k = calabi(3, 1.0);
  CHECK(radial(k, v({1, 1, 1})) == doctest::Approx(1.0));
  CHECK(radial(k, v({1, 2, 4})) == doctest::Approx(0.5));
  // 3 (prod u)^(1/3) on the negative octant.
  CHECK(support(k, v({-1, -8, -1})) == doctest::Approx(-6.0));
  CHECK(support_numeric(k, v({-1, -8, -1})) == doctest::Approx(-6.0).epsilon(1e-9));
  const PseudoCone ks = copolar::copolar(k);
  CHECK(radial(ks, v({-1, -1, -1})) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("perturbed hyperbola radial solves its boundary equation") {
  const double delta = 0.1;
  const PseudoCone k = perturbed_hyperbola(delta);
  for (const Vec& w : {v({1, 1}), v({0.3, 2}), v({5, 0.2})}) {
    const Vec x = radial(k, w) * w;
    CHECK(x[1] == doctest::Approx(1.0 / x[0] + delta / std::pow(x[0], 3)).epsilon(1e-13));
  }
  CHECK_FALSE(k.analytic());
}

TEST_CASE("truncated and shifted cones") {
  const PseudoCone t = truncated_cone(Cone::orthant(2), 1.0);
  CHECK(radial(t, v({1, 1})) == doctest::Approx(0.5));
  CHECK(support(t, v({-1, -2})) == doctest::Approx(-1.0));
  CHECK(support_numeric(t, v({-1, -2})) == doctest::Approx(-1.0).epsilon(1e-9));
  const PseudoCone s = shifted_cone(Cone::orthant(2), v({1, 2}));
  CHECK(member(s, v({1, 2})));
  CHECK_FALSE(member(s, v({0.9, 3})));
  CHECK(support(s, v({-1, -1})) == doctest::Approx(-3.0));
  CHECK(support_numeric(s, v({-1, -1})) == doctest::Approx(-3.0).epsilon(1e-9));
  CHECK_THROWS_AS(shifted_cone(Cone::orthant(2), v({1, -1})), Error);
}

TEST_CASE("linear images transform radial fields") {
  const PseudoCone k = hyperbola(1.0);
  Mat a(2, 2);
  a << 2, 1, 0, 1;
  const PseudoCone ak = linear_image(k, a);
  const Vec x = radial(k, v({1, 2})) * v({1, 2});
  const Vec y = a * x;
  CHECK(radial(ak, y) == doctest::Approx(1.0));
  CHECK(member(ak, 1.01 * y));
  CHECK_FALSE(member(ak, 0.99 * y));
}

TEST_CASE("star-shape monotonicity along rays") {
  const PseudoCone k = calabi(3, 2.0);
  const Vec w = v({0.5, 1.0, 2.0});
  const double rho = radial(k, w);
  for (double lambda : {1.0, 1.5, 10.0}) CHECK(member(k, lambda * rho * w, 1e-12));
  CHECK_FALSE(member(k, 0.99 * rho * w));
}

TEST_CASE("family catalogue and argument checks") {
  CHECK(list_families().size() == 5);
  CHECK_THROWS_AS(hyperbola(-1.0), Error);
  CHECK_THROWS_AS(calabi(5, 1.0), Error);
  FamilySpec f;
  f.family = "nope";
  CHECK_THROWS_AS(make_family(f), Error);
}
