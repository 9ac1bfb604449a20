#include <doctest.h>

#include <cmath>
#include <numbers>

#include "copolar/cone.hpp"
#include "copolar/error.hpp"

using namespace copolar;

namespace {

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("orthant and its dual") {
  const Cone c = Cone::orthant(3);
  const Cone d = dual(c);
  CHECK(c.contains(v({1, 2, 0})));
  CHECK_FALSE(c.contains(v({1, -0.1, 0})));
  CHECK(d.contains(v({-1, -2, -3})));
  CHECK_FALSE(d.contains(v({1, -2, -3})));
  CHECK(interior_contains(c, v({1, 1, 1})));
  CHECK_FALSE(interior_contains(c, v({1, 1, 0})));
}

TEST_CASE("dual of a circular cone has the complementary half angle") {
  const double alpha = 0.4;
  const Cone c = Cone::circular(v({0, 0, 1}), alpha);
  const Cone d = dual(c);
  CHECK(d.kind() == ConeKind::circular);
  CHECK(d.half_angle() == doctest::Approx(std::numbers::pi / 2 - alpha));
  CHECK((d.axis() + v({0, 0, 1})).norm() < 1e-14);
}

TEST_CASE("dual pairing is nonpositive on sampled generators") {
  const Cone c = Cone::polyhedral({v({1, 0.2, 0.1}), v({0.1, 1, 0.3}), v({0.2, 0.1, 1}), v({1, 1, 0.2})});
  const Cone d = dual(c);
  for (const Vec& g : c.generators())
    for (const Vec& h : d.generators()) CHECK(g.dot(h) <= 1e-12);
}

TEST_CASE("polyhedral footprint stays within a hemisphere") {
  // A wide cone whose generator sum would be a poor base direction.
  Mat a(3, 3);
  a << 1, 0.5, 0, 0.3, 1, 0.5, 0, 0.3, 1;
  const Cone d = dual(linear_image(Cone::orthant(3), a));
  CHECK(d.footprint_angle() < std::numbers::pi / 2);
  for (const Vec& g : d.generators()) CHECK(g.dot(d.base_direction()) > 0.0);
}

TEST_CASE("non-pointed generators are rejected") {
  CHECK_THROWS_AS(Cone::polyhedral({v({1, 0}), v({-1, 0}), v({0, 1})}), Error);
}

TEST_CASE("gnomonic chart round trip") {
  const Cone c = Cone::circular(v({1, 1, 1}).normalized(), 0.6);
  const GnomonicChart chart(c, 0.05);
  for (const Vec& p : chart.sample(20, 3)) {
    CHECK(chart.contains(p));
    const Vec w = chart.direction(p);
    CHECK(w.norm() == doctest::Approx(1.0));
    CHECK(c.slack(w) >= 0.05 - 1e-12);
    CHECK((chart.to_params(w * 2.5) - p).norm() < 1e-12);
  }
  CHECK(chart.inscribed_radius() == doctest::Approx(std::tan(0.55)));
}

TEST_CASE("chart samples are deterministic per seed") {
  const GnomonicChart chart(Cone::orthant(3), 0.05);
  const auto a = chart.sample(10, 1);
  const auto b = chart.sample(10, 1);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
