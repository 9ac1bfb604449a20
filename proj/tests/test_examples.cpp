// Hand-derived point values across the modules.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "copolar/centroaffine.hpp"
#include "copolar/duality.hpp"

using namespace copolar;
using std::numbers::sqrt2;

namespace {

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

double dist(const Vec& a, const Vec& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("finite-difference derivatives of polynomials") {
  CHECK(dist(grad_fd([](const Vec& x) { return 0.5 * x.squaredNorm(); }, v({1, 2})), v({1, 2})) < 1e-10);
  CHECK(dist(grad_fd([](const Vec& x) { return x[0] * x[1]; }, v({3, 5})), v({5, 3})) < 1e-10);
  Mat swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK((hess_fd([](const Vec& x) { return x[0] * x[1]; }, v({0.3, -2})) - swap).norm() < 1e-8);
  CHECK((hess_fd([](const Vec& x) { return 0.5 * x.squaredNorm(); }, v({1, 2, 3})) - Mat::Identity(3, 3)).norm() <
        1e-7);
  const Tensor3 cube = third_fd([](const Vec& x) { return x[0] * x[0] * x[0]; }, v({0.7, 1.1}));
  CHECK(cube(0, 0, 0) == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(std::abs(cube(0, 0, 1)) < 1e-5);
  CHECK(std::abs(cube(1, 1, 1)) < 1e-5);
  const Tensor3 triple = third_fd([](const Vec& x) { return x[0] * x[1] * x[2]; }, v({1, 2, 3}));
  CHECK(triple(0, 1, 2) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(triple(2, 0, 1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(triple(0, 0, 1)) < 1e-5);
  const Tensor3 e = third_fd([](const Vec& x) { return std::exp(x[0]); }, v({0}));
  CHECK(std::abs(e(0, 0, 0) - 1.0) < 1e-5);
}

TEST_CASE("half squared gauge of the hyperbola") {
  const PseudoCone k = hyperbola(1.0);
  // F^2 = x1 x2.
  CHECK(dist(half_gauge_sq_gradient(k, v({1, 1})), v({0.5, 0.5})) < 1e-10);
  Mat h(2, 2);
  h << 0, 0.5, 0.5, 0;
  CHECK((half_gauge_sq_hessian(k, v({2, 3})) - h).norm() < 1e-8);
}

TEST_CASE("cap searches") {
  const PseudoCone k = hyperbola(1.0);
  const Vec u = v({-1, -1}) / sqrt2;
  const CapMaximum m = maximize_on_cap([&](const Vec& w) { return radial(k, w) * u.dot(w); },
                                       k.cone().footprint_cap());
  CHECK(m.value == doctest::Approx(-sqrt2).epsilon(1e-8));
  const Vec w = v({0.2, 0.3, 1}).normalized();
  const CapMaximum a = maximize_on_cap([&](const Vec& d) { return -angle_between(d, w); },
                                       CapDomain{v({0, 0, 1}), 0.6, 0.0});
  CHECK(dist(a.direction, w) < 1e-6);
}

TEST_CASE("cones, duals and charts") {
  const Cone d = dual(Cone::orthant(2));
  REQUIRE(d.generators().size() == 2);
  CHECK(d.contains(v({-1, 0})));
  CHECK(d.contains(v({0, -1})));
  CHECK_FALSE(d.contains(v({1, -1})));
  const Cone c = Cone::circular(v({0, 0, 1}), std::numbers::pi / 4);
  CHECK(dual(c).half_angle() == doctest::Approx(std::numbers::pi / 4));
  CHECK(interior_contains(c, v({1, 0, 2})));
  CHECK(Cone::orthant(2).contains(v({1, 1})));
  CHECK_FALSE(interior_contains(Cone::orthant(2), v({1, 0})));
  CHECK(GnomonicChart(c, 0.0).inscribed_radius() == doctest::Approx(1.0));
  CHECK(GnomonicChart(c, std::numbers::pi / 8).inscribed_radius() == doctest::Approx(0.41421356).epsilon(1e-7));
  CHECK(GnomonicChart(Cone::orthant(2), 0.0).params() == 1);
}

TEST_CASE("radial, support, gauge and membership values") {
  const PseudoCone h = hyperbola(1.0);
  const PseudoCone c3 = calabi(3, 1.0);
  CHECK(radial(h, v({1, 1}) / sqrt2) == doctest::Approx(sqrt2));
  CHECK(radial(c3, v({1, 1, 1}) / std::sqrt(3.0)) == doctest::Approx(std::sqrt(3.0)));
  const PseudoCone t = truncated_cone(Cone::orthant(2), 1.0);
  CHECK(radial(t, v({0.9, 0.2})) == doctest::Approx(1.0 / 1.1));
  CHECK(support(h, v({-1, -1})) == doctest::Approx(-2.0));
  CHECK(std::isinf(support(h, v({1, 1}))));
  CHECK(support(c3, -v({1, 1, 1}) / std::sqrt(3.0)) == doctest::Approx(-std::sqrt(3.0)));
  CHECK(gauge(h, v({2, 2})) == doctest::Approx(2.0));
  CHECK(gauge(h, v({1, 1})) == doctest::Approx(1.0));
  CHECK(gauge(c3, v({2, 2, 2})) == doctest::Approx(2.0));
  CHECK(member(h, v({2, 1})));
  CHECK_FALSE(member(h, v({0.5, 0.5})));
  CHECK(member(shifted_cone(Cone::orthant(2), v({1, 1})), v({1, 1})));
}

TEST_CASE("copolar sets and linear images") {
  CHECK(radial(copolar::copolar(hyperbola(1.0)), v({-1, -1}) / sqrt2) == doctest::Approx(1 / sqrt2));
  const PseudoCone c3 = copolar::copolar(calabi(3, 1.0));
  // {u < 0 : prod |u_i| >= 1/27}
  CHECK(member(c3, v({-1.0 / 3, -1.0 / 3, -1.0 / 3}), 1e-12));
  CHECK_FALSE(member(c3, v({-0.3, -1.0 / 3, -1.0 / 3})));
  const PseudoCone ts = copolar::copolar(truncated_cone(Cone::orthant(2), 1.0));
  // {u <= -(1, 1)}: radial value -1 / max(u1, u2).
  for (const Vec& u : {v({-1, -1}), v({-2, -0.5}), v({-0.3, -3})})
    CHECK(radial(ts, u) == doctest::Approx(-1.0 / u.maxCoeff()).epsilon(1e-9));
  const PseudoCone k = hyperbola(1.0);
  CHECK(radial(linear_image(k, Mat::Identity(2, 2)), v({0.3, 0.8})) == doctest::Approx(radial(k, v({0.3, 0.8}))));
  Mat a(2, 2);
  a << 2, 0, 0, 1;
  CHECK(radial(linear_image(k, a), v({1, 1}) / sqrt2) == doctest::Approx(2.0));
}

TEST_CASE("Legendre-type transforms") {
  const PseudoCone k = hyperbola(1.0);
  CHECK(htilde(k, v({-1, -1})) == doctest::Approx(-2.0));
  CHECK(std::isinf(htilde(k, v({1, 1}))));
  CHECK(htilde(k, v({0, 0})) == 0.0);

  LegendreSearch quad;
  quad.cap = CapDomain{v({1, 2}).normalized(), 1.0, 0.0};
  CHECK(legendre([](const Vec& u) { return 0.5 * u.squaredNorm(); }, v({1, 2}), quad).value ==
        doctest::Approx(2.5).epsilon(1e-9));

  LegendreSearch ball;
  ball.cap = CapDomain{v({0, 1}), 1.2, 0.0};
  const ExtendedField indicator = [](const Vec& u) {
    return u.norm() <= 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  CHECK(legendre(indicator, v({0, 3}), ball).value == doctest::Approx(3.0).epsilon(1e-9));

  LegendreSearch s;
  s.cap = k.dual_cone().footprint_cap();
  s.ray_degree = 2.0;
  const LegendreResult r = legendre(HTilde{k}, v({1, 1}), s);
  CHECK(r.diverged);
  CHECK(dist(r.escape_ray, v({-1, -1}) / sqrt2) < 1e-4);

  CHECK(ratio_support(k, v({2, 2})) == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(std::isinf(ratio_support(k, v({-1, 2}))));
  CHECK(scale_saddle(k, v({2, 2})) == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("normals, curvature and crucial maps") {
  const PseudoCone h = hyperbola(1.0);
  const BoundaryChart ch = BoundaryChart::footprint(h, 0.0);
  CHECK(dist(outer_normal(ch, ch.to_params(v({1, 1}))), -v({1, 1}) / sqrt2) < 1e-12);
  CHECK(dist(outer_normal(ch, ch.to_params(v({2, 0.5}))), -v({0.5, 2}).normalized()) < 1e-12);
  const PseudoCone c3 = calabi(3, 1.0);
  const BoundaryChart cc = BoundaryChart::footprint(c3, 0.0);
  CHECK(dist(outer_normal(cc, cc.to_params(v({1, 1, 1}))), -v({1, 1, 1}) / std::sqrt(3.0)) < 1e-12);

  CHECK(gauss_curvature(ch, ch.to_params(v({1, 1}))) == doctest::Approx(1 / sqrt2).epsilon(1e-12));
  const BoundaryChart cs = BoundaryChart::footprint(copolar::copolar(h), 0.0);
  CHECK(gauss_curvature(cs, cs.to_params(v({-0.5, -0.5}))) == doctest::Approx(sqrt2).epsilon(1e-12));
  CHECK(equiaffine_support(cs, cs.to_params(v({-0.5, -0.5}))) ==
        doctest::Approx(-std::pow(2.0, -2.0 / 3.0)).epsilon(1e-12));

  CHECK(dist(crucial_map(h, v({2, 0.5})).x_star, v({-0.25, -1})) < 1e-12);
  CHECK(dist(crucial_map(c3, v({1, 1, 1})).x_star, -v({1, 1, 1}) / 3.0) < 1e-12);
}

TEST_CASE("affine-sphere statistic discriminates a strong perturbation") {
  SampleSpec spec;
  spec.count = 10;
  CHECK(affine_sphere_statistic(perturbed_hyperbola(0.5), spec).max_rel_deviation >= 1e-2);
}

TEST_CASE("connection coefficients") {
  const BoundaryChart chart(hyperbola(1.0), exponential_directions());
  const Tensor3 g = christoffel(chart, v({0.3}));
  CHECK(std::abs(g(0, 0, 0)) < 1e-12);
  Tensor3 zero(2);
  const Tensor3 flat = christoffel_from_metric(Mat::Identity(2, 2), zero);
  CHECK(flat.max_abs() == 0.0);
}

TEST_CASE("christoffel symbols follow the change-of-chart rule") {
  // Under p = 2q: Gamma_q = 2 Gamma_p for a one-parameter chart.
  const PseudoCone k = perturbed_hyperbola(0.1);
  const BoundaryChart base(k, exponential_directions());
  const BoundaryChart twice(k, rescaled(exponential_directions(), 2.0));
  const double gp = christoffel(base, v({0.4}))(0, 0, 0);
  const double gq = christoffel(twice, v({0.2}))(0, 0, 0);
  CHECK(gq == doctest::Approx(2.0 * gp).epsilon(1e-4));
}

TEST_CASE("calabi tensors agree with their copolar counterparts") {
  TensorSpec spec;
  spec.count = 5;
  spec.metric_tolerance = 1e-5;
  spec.cubic_tolerance = 1e-5;
  const TensorAudit a = check_tensor_identities(calabi(3, 1.0), spec);
  CHECK(a.metric.verdict == Verdict::holds);
  CHECK(a.cubic.verdict == Verdict::holds);
}
