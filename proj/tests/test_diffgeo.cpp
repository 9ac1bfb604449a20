#include <doctest.h>

#include <cmath>

#include "copolar/diffgeo.hpp"
#include "copolar/error.hpp"

using namespace copolar;

namespace {

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

// Curvature of the plane graph y(x): |y''| / (1 + y'^2)^(3/2).
double graph_curvature(double d1, double d2) { return std::abs(d2) / std::pow(1.0 + d1 * d1, 1.5); }

// Gauss curvature of a level set {phi = c} in R^3 from the bordered Hessian.
double level_set_curvature(const Vec& grad, const Mat& hess) {
  Mat b = Mat::Zero(4, 4);
  b.topLeftCorner(3, 3) = hess;
  b.block(0, 3, 3, 1) = grad;
  b.block(3, 0, 1, 3) = grad.transpose();
  return std::abs(b.determinant()) / std::pow(grad.squaredNorm(), 2);
}

Vec chart_point(const BoundaryChart& chart, const Vec& x) { return chart.to_params(x); }

}  // namespace

TEST_CASE("hyperbola curvature and equiaffine support at (1, 1)") {
  const PseudoCone k = hyperbola(1.0);
  const BoundaryChart chart = BoundaryChart::footprint(k, 0.0);
  const Vec p = chart_point(chart, v({1, 1}));
  const CurvatureSample s = curvature_sample(chart, p);
  CHECK((s.x - v({1, 1})).norm() < 1e-14);
  // y = 1/x: y' = -1, y'' = 2.
  CHECK(s.kappa == doctest::Approx(graph_curvature(-1, 2)).epsilon(1e-12));
  CHECK(s.kappa_det == doctest::Approx(s.kappa).epsilon(1e-10));
  CHECK((s.normal + v({1, 1}).normalized()).norm() < 1e-12);
  CHECK(equiaffine_support(chart, p) == doctest::Approx(-std::pow(2.0, 2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("curvature of the perturbed hyperbola from its graph") {
  const double delta = 0.1;
  const PseudoCone k = perturbed_hyperbola(delta);
  const BoundaryChart chart = BoundaryChart::footprint(k, 0.05);
  for (const Vec& p : chart.sample(5, 2)) {
    const double x = chart.point(p)[0];
    const double d1 = -1 / (x * x) - 3 * delta / std::pow(x, 4);
    const double d2 = 2 / std::pow(x, 3) + 12 * delta / std::pow(x, 5);
    CHECK(gauss_curvature(chart, p) == doctest::Approx(graph_curvature(d1, d2)).epsilon(1e-5));
  }
}

TEST_CASE("calabi curvature from the bordered Hessian; the surface is an affine sphere") {
  const PseudoCone k = calabi(3, 1.0);
  const BoundaryChart chart = BoundaryChart::footprint(k, 0.05);
  double first = 0.0;
  for (const Vec& p : chart.sample(6, 4)) {
    const Vec x = chart.point(p);
    CHECK(x.prod() == doctest::Approx(1.0).epsilon(1e-13));
    const Vec grad = v({x[1] * x[2], x[0] * x[2], x[0] * x[1]});
    Mat hess(3, 3);
    hess << 0, x[2], x[1], x[2], 0, x[0], x[1], x[0], 0;
    const double kappa = level_set_curvature(grad, hess);
    CHECK(gauss_curvature(chart, p) == doctest::Approx(kappa).epsilon(1e-10));
    // <x, nu> / kappa^(1/4) with nu = -grad / |grad|.
    const double oracle = -x.dot(grad) / grad.norm() / std::pow(kappa, 0.25);
    const double rho = equiaffine_support(chart, p);
    CHECK(rho == doctest::Approx(oracle).epsilon(1e-10));
    if (first == 0.0) first = rho;
    CHECK(rho == doctest::Approx(first).epsilon(1e-10));
  }
}

TEST_CASE("crucial map on the hyperbola") {
  const PseudoCone k = hyperbola(1.0);
  const CrucialPair c = crucial_map(k, v({1, 1}));
  CHECK((c.x_star - v({-0.5, -0.5})).norm() < 1e-14);
  CHECK(c.pairing == doctest::Approx(-1.0));
  CHECK((crucial_map_hessian(k, v({2, 0.5})) - crucial_map(k, v({2, 0.5})).x_star).norm() < 1e-12);
  CHECK_THROWS_AS(crucial_map(k, v({2, 2})), Error);
  // Degree-1 homogeneous extension into int C.
  CHECK((crucial_image(k, v({3, 3})) - v({-1.5, -1.5})).norm() < 1e-12);
}

TEST_CASE("crucial map of the perturbed family through finite differences") {
  const PseudoCone k = perturbed_hyperbola(0.1);
  const Vec w = v({1.0, 0.7});
  const Vec x = radial(k, w) * w;
  const CrucialPair c = crucial_map(k, x);
  CHECK(c.pairing == doctest::Approx(-1.0).epsilon(1e-9));
  // x* is normal to the boundary graph y = 1/x + delta/x^3.
  const double slope = -1 / (x[0] * x[0]) - 0.3 / std::pow(x[0], 4);
  CHECK(std::abs(c.x_star.dot(v({1, slope}))) < 1e-8);
}

TEST_CASE("product identity on the hyperbola and the perturbed family") {
  SampleSpec spec;
  spec.count = 10;
  const ProductAudit h = check_product_identity(hyperbola(1.0), spec);
  CHECK(h.report.verdict == Verdict::holds);
  CHECK(h.report.max_abs_error < 1e-12);
  REQUIRE(h.rows.size() == 10);
  for (const CurvatureRow& r : h.rows) CHECK(r.pair_product == doctest::Approx(1.0));
  spec.tolerance = 1e-4;
  CHECK(check_product_identity(perturbed_hyperbola(0.1), spec).report.verdict == Verdict::holds);
}

TEST_CASE("chart reparametrization leaves curvature unchanged") {
  const PseudoCone k = calabi(3, 1.0);
  const BoundaryChart base = BoundaryChart::footprint(k, 0.05);
  const BoundaryChart twice(k, rescaled(base.directions(), 2.0));
  for (const Vec& p : base.sample(4, 1)) {
    CHECK(gauss_curvature(twice, p / 2.0) == doctest::Approx(gauss_curvature(base, p)).epsilon(1e-12));
    CHECK(equiaffine_support(twice, p / 2.0) == doctest::Approx(equiaffine_support(base, p)).epsilon(1e-12));
  }
}

TEST_CASE("gauge equality and crucial-pair contracts") {
  SampleSpec spec;
  spec.count = 10;
  CHECK(check_gauge_equality(calabi(3, 1.0), spec).verdict == Verdict::holds);
  const CrucialAudit c = check_crucial_pairs(hyperbola(2.0), spec);
  CHECK(c.pairing.verdict == Verdict::holds);
  CHECK(c.involution.verdict == Verdict::holds);
  CHECK(c.hessian.verdict == Verdict::holds);
}

TEST_CASE("affine sphere statistic separates the families") {
  SampleSpec spec;
  spec.count = 10;
  const AffineSphereStats h = affine_sphere_statistic(hyperbola(1.0), spec);
  CHECK(h.max_rel_deviation < 1e-10);
  CHECK(h.mean == doctest::Approx(-std::pow(2.0, 2.0 / 3.0)));
  CHECK(h.mean_star == doctest::Approx(-std::pow(2.0, -2.0 / 3.0)));
  CHECK(affine_sphere_statistic(perturbed_hyperbola(0.1), spec).max_rel_deviation > 1e-2);
}
