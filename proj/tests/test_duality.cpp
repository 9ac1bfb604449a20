#include <doctest.h>

#include <cmath>

#include "copolar/duality.hpp"
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

TEST_CASE("ratio support equals the copolar support") {
  const PseudoCone k = hyperbola(1.0);
  // h_{K*}(x) = -sqrt(x1 x2) for K* = {u1 u2 >= 1/4}.
  CHECK(ratio_support(k, v({1, 1})) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(ratio_support(k, v({1, 4})) == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(ratio_support(k, v({0, 0})) == 0.0);
  CHECK(std::isinf(ratio_support(k, v({-1, 1}))));
}

TEST_CASE("saddle form at hand-computed points") {
  // min_a (a lambda + a^2/2) = -lambda^2/2.
  CHECK(scale_saddle(hyperbola(1.0), v({1, 1})) == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(scale_saddle(hyperbola(1.0), v({1, 4})) == doctest::Approx(-2.0).epsilon(1e-10));
  // calabi(3): h_{K*}(x) = -(prod x)^(1/3) at x = (1, 1, 1).
  CHECK(scale_saddle(calabi(3, 1.0), v({1, 1, 1})) == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK_THROWS_AS(scale_saddle(hyperbola(1.0), v({1, 0})), Error);
}

TEST_CASE("htilde is -h^2/2 on the dual cone and +inf off it") {
  const PseudoCone k = hyperbola(1.0);
  CHECK(htilde(k, v({-1, -1})) == doctest::Approx(-2.0));
  CHECK(std::isinf(htilde(k, v({1, -1}))));
}

TEST_CASE("sup-form Legendre transform diverges on the hyperbola") {
  const PseudoCone k = hyperbola(1.0);
  LegendreSearch s;
  s.cap = k.dual_cone().footprint_cap();
  s.ray_degree = 2.0;
  const LegendreResult r = legendre(HTilde{k}, v({1, 2}), s);
  CHECK(r.diverged);
  CHECK(std::isinf(r.value));
  REQUIRE(r.escape_ray.size() == 2);
  // The escape ray lies in the dual cone, where -h^2/2 decreases without bound.
  CHECK(k.dual_cone().contains(r.escape_ray, 1e-9));
  CHECK(r.range_values.size() >= 2);
  CHECK(r.range_values.back() > r.range_values.front());
}

TEST_CASE("Legendre search recovers a finite convex conjugate") {
  // f(u) = |u|^2 / 2 on the negative quadrant; sup <x,u> - f is |x|^2/2 at u = x
  // when x lies in it.
  LegendreSearch s;
  s.cap = dual(Cone::orthant(2)).footprint_cap();
  const ExtendedField f = [](const Vec& u) { return 0.5 * u.squaredNorm(); };
  const LegendreResult r = legendre(f, v({-0.5, -1.0}), s);
  CHECK_FALSE(r.diverged);
  CHECK(r.value == doctest::Approx(0.625).epsilon(1e-9));
}

TEST_CASE("Legendre audit on the hyperbola: saddle holds, sup fails with rays") {
  LegendreGrid g;
  g.count = 10;
  const LegendreAudit a = audit_legendre(hyperbola(1.0), g);
  CHECK(a.saddle.verdict == Verdict::holds);
  CHECK(a.saddle.max_abs_error < 1e-10);
  CHECK(a.sup.verdict == Verdict::fails);
  CHECK(a.sup.metrics.at("diverged_points") == a.sup.metrics.at("grid_points"));
  REQUIRE_FALSE(a.sup.worst.empty());
  for (const Witness& w : a.sup.worst) CHECK(w.ray.size() == 2);
}

TEST_CASE("shell grid stays inside the cone") {
  const Cone c = Cone::orthant(3);
  const auto pts = shell_grid(c, 12, {1.0, 3.0}, 0.05);
  CHECK(pts.size() == 12);
  for (const Vec& x : pts) CHECK(interior_contains(c, x));
}
