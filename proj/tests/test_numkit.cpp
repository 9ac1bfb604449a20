#include <doctest.h>

#include <cmath>

#include "copolar/error.hpp"
#include "copolar/jet.hpp"
#include "copolar/numkit.hpp"

using namespace copolar;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

// f = x^2 y + sin(y z) and its derivatives written out by hand.
double f(const Vec& p) { return p[0] * p[0] * p[1] + std::sin(p[1] * p[2]); }

}  // namespace

TEST_CASE("finite differences match hand derivatives") {
  const Vec p = v3(0.7, -0.4, 1.3);
  const double x = p[0], y = p[1], z = p[2];
  const Vec g = grad_fd(f, p);
  CHECK(g[0] == doctest::Approx(2 * x * y).epsilon(1e-10));
  CHECK(g[1] == doctest::Approx(x * x + z * std::cos(y * z)).epsilon(1e-10));
  CHECK(g[2] == doctest::Approx(y * std::cos(y * z)).epsilon(1e-10));

  const Mat h = hess_fd(f, p);
  CHECK(h(0, 1) == doctest::Approx(2 * x).epsilon(1e-7));
  CHECK(h(1, 2) == doctest::Approx(std::cos(y * z) - y * z * std::sin(y * z)).epsilon(1e-7));
  CHECK(h(2, 2) == doctest::Approx(-y * y * std::sin(y * z)).epsilon(1e-7));
  CHECK((h - h.transpose()).norm() < 1e-12);

  const Tensor3 t = third_fd(f, p);
  CHECK(t(0, 0, 1) == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(t(2, 2, 2) == doctest::Approx(-y * y * y * std::cos(y * z)).epsilon(1e-5));
  CHECK(t.asymmetry() < 1e-12);
}

TEST_CASE("step policy rejects nonsense") {
  StepPolicy bad;
  bad.base_step = -1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("jets carry exact derivatives through arithmetic") {
  const Jet x = Jet::variable(2, 0, 0.5);
  const Jet y = Jet::variable(2, 1, 2.0);
  const Jet r = pow(x * y * y, 1.5) / (1.0 + exp(x));
  // Compare against finite differences of the same expression.
  auto g = [](const Vec& p) { return std::pow(p[0] * p[1] * p[1], 1.5) / (1.0 + std::exp(p[0])); };
  const Vec p = v2(0.5, 2.0);
  const Vec gd = grad_fd(g, p);
  const Mat hd = hess_fd(g, p);
  const Tensor3 td = third_fd(g, p);
  CHECK(r.value() == doctest::Approx(g(p)).epsilon(1e-15));
  for (int i = 0; i < 2; ++i) {
    CHECK(r.d(i) == doctest::Approx(gd[i]).epsilon(1e-9));
    for (int j = 0; j < 2; ++j) {
      CHECK(r.d2(i, j) == doctest::Approx(hd(i, j)).epsilon(1e-6));
      for (int k = 0; k < 2; ++k) CHECK(r.d3(i, j, k) == doctest::Approx(td(i, j, k)).epsilon(1e-4));
    }
  }
}

TEST_CASE("rescaling jet variables follows the chain rule") {
  const Jet x = Jet::variable(1, 0, 0.3);
  const Jet r = sqrt(1.0 + x * x * x);
  const Jet s = r.scale_variables(2.0);
  CHECK(s.value() == doctest::Approx(r.value()));
  CHECK(s.d(0) == doctest::Approx(2.0 * r.d(0)));
  CHECK(s.d2(0, 0) == doctest::Approx(4.0 * r.d2(0, 0)));
  CHECK(s.d3(0, 0, 0) == doctest::Approx(8.0 * r.d3(0, 0, 0)));
}

TEST_CASE("cap maximization finds the closest direction") {
  // <v, t> on a cap around e3 peaks at the target when it lies inside.
  const Vec target = v3(0.3, -0.2, 1.0).normalized();
  CapDomain cap{v3(0, 0, 1), 0.8, 0.0};
  const CapMaximum m = maximize_on_cap([&](const Vec& v) { return v.dot(target); }, cap);
  CHECK(m.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((m.direction - target).norm() < 1e-5);
}

TEST_CASE("cap maximization respects the cap boundary") {
  // Target outside the cap: the maximum sits on the rim, at angle 0.5 from it.
  const Vec target = v2(1.0, 0.0);
  CapDomain cap{v2(0, 1), 0.5, 0.0};
  const CapMaximum m = maximize_on_cap([&](const Vec& v) { return v.dot(target); }, cap);
  CHECK(m.value == doctest::Approx(std::sin(0.5)).epsilon(1e-10));
}

TEST_CASE("interval maximization and simplex minimization") {
  const ScalarMaximum m = maximize_interval([](double t) { return -(t - 0.3) * (t - 0.3); }, -1.0, 2.0);
  CHECK(m.argmax == doctest::Approx(0.3).epsilon(1e-8));
  const SimplexResult s = nelder_mead_min(
      [](const Vec& p) { return (p[0] - 1) * (p[0] - 1) + 10 * (p[1] + 2) * (p[1] + 2); }, v2(0, 0), 0.5, 1e-12);
  CHECK(s.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.x[1] == doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("linear algebra helpers") {
  const Vec u = v3(1, 2, 2) / 3.0;
  const Mat b = complement_basis(u);
  CHECK(b.cols() == 2);
  CHECK((b.transpose() * b - Mat::Identity(2, 2)).norm() < 1e-14);
  CHECK((b.transpose() * u).norm() < 1e-14);

  Mat rows(2, 3);
  rows << 1, 0, 0, 0, 1, 0;
  CHECK(std::abs(null_vector(rows)[2]) == doctest::Approx(1.0));
  Mat flat(2, 3);
  flat << 1, 0, 0, 2, 0, 0;
  CHECK_THROWS_AS(null_vector(flat), Error);
  CHECK(angle_between(v2(1, 0), v2(0, 3)) == doctest::Approx(std::acos(0.0)));
}
