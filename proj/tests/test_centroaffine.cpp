#include <doctest.h>

#include <cmath>

#include "copolar/centroaffine.hpp"
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

TEST_CASE("hyperbola in the exponential chart: G = -1, A = 0") {
  const BoundaryChart chart(hyperbola(1.0), exponential_directions());
  for (double t : {-0.7, 0.0, 0.4}) {
    const CentroAffineFrame f = centroaffine_frame(chart, v({t}));
    CHECK((f.x[0].value() - std::exp(t)) == doctest::Approx(0.0));
    CHECK(f.G(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(f.A(0, 0, 0)) < 1e-12);
    CHECK(f.metric_form_gap < 1e-13);
  }
}

TEST_CASE("conormal annihilates the tangent plane and pairs with X to -1") {
  const BoundaryChart chart = BoundaryChart::footprint(calabi(3, 1.0), 0.05);
  for (const Vec& p : chart.sample(4, 5)) {
    const CentroAffineFrame f = centroaffine_frame(chart, p);
    double pair = 0.0;
    for (int i = 0; i < 3; ++i) pair += f.x[i].value() * f.x_star[i].value();
    CHECK(pair == doctest::Approx(-1.0).epsilon(1e-13));
    for (int a = 0; a < 2; ++a) {
      double t = 0.0;
      for (int i = 0; i < 3; ++i) t += f.x[i].d(a) * f.x_star[i].value();
      CHECK(std::abs(t) < 1e-12);
    }
    // Metric compatibility of the Levi-Civita connection.
    CHECK(f.ricci_gap < 1e-10);
    CHECK(f.cubic_asymmetry < 1e-9);
    REQUIRE(f.A_direct);
    for (std::size_t j = 0; j < f.A.data().size(); ++j)
      CHECK(f.A.data()[j] == doctest::Approx(f.A_direct->data()[j]).epsilon(1e-9));
  }
}

TEST_CASE("tensors transform as covariant tensors under t -> 2t") {
  const PseudoCone k = perturbed_hyperbola(0.1);
  const BoundaryChart base(k, exponential_directions());
  const BoundaryChart twice(k, rescaled(exponential_directions(), 2.0));
  const Vec p = v({0.3});
  const CentroAffineFrame a = centroaffine_frame(base, p);
  const CentroAffineFrame b = centroaffine_frame(twice, p / 2.0);
  CHECK(b.G(0, 0) == doctest::Approx(4.0 * a.G(0, 0)).epsilon(1e-6));
  CHECK(b.A(0, 0, 0) == doctest::Approx(8.0 * a.A(0, 0, 0)).epsilon(1e-4));
}

TEST_CASE("christoffel symbols of a conformally flat metric") {
  // G = e^{2x} I in two variables: Gamma^0_00 = 1, Gamma^1_01 = 1, Gamma^0_11 = -1.
  const Mat G = Mat::Identity(2, 2);
  Tensor3 dG(2);
  dG(0, 0, 0) = 2.0;
  dG(1, 1, 0) = 2.0;
  const Tensor3 g = christoffel_from_metric(G, dG);
  CHECK(g(0, 0, 0) == doctest::Approx(1.0));
  CHECK(g(1, 0, 1) == doctest::Approx(1.0));
  CHECK(g(1, 1, 0) == doctest::Approx(1.0));
  CHECK(g(0, 1, 1) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(christoffel_from_metric(Mat::Zero(2, 2), dG), Error);
}

TEST_CASE("pull back through a Jacobian") {
  Mat J(2, 2);
  J << 2, 0, 1, 3;
  const Mat t = Mat::Identity(2, 2);
  CHECK((pull_back(t, J) - J.transpose() * J).norm() < 1e-14);
  Tensor3 c(2);
  c(0, 0, 0) = 1.0;
  const Tensor3 p = pull_back(c, J);
  CHECK(p(1, 1, 1) == doctest::Approx(0.0));
  CHECK(p(0, 0, 0) == doctest::Approx(8.0));
}

TEST_CASE("tensor identities: analytic and finite-difference families") {
  TensorSpec spec;
  spec.count = 6;
  spec.chart = exponential_directions();
  const TensorAudit h = check_tensor_identities(hyperbola(1.0), spec);
  CHECK(h.metric.verdict == Verdict::holds);
  CHECK(h.cubic.verdict == Verdict::holds);
  spec.metric_tolerance = 1e-4;
  spec.cubic_tolerance = 1e-3;
  const TensorAudit p = check_tensor_identities(perturbed_hyperbola(0.1), spec);
  CHECK(p.metric.verdict == Verdict::holds);
  CHECK(p.cubic.verdict == Verdict::holds);
  CHECK(p.cubic.metrics.at("max_abs_cubic_form") >= 1e-3);
}

TEST_CASE("C^0 families have no centro-affine frame") {
  const BoundaryChart chart = BoundaryChart::footprint(truncated_cone(Cone::orthant(2), 1.0), 0.05);
  CHECK_THROWS_AS(centroaffine_frame(chart, chart.sample(1)[0]), Error);
}
