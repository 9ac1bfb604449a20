#include <cmath>
#include <algorithm>
#include <limits>
#include <span>

#include "copolar/error.hpp"
#include "copolar/pseudocone.hpp"

namespace copolar {
namespace {

/// {x > 0 : prod x_i >= c} on the positive orthant; n = 2 is the hyperbola.
class ProductLevelModel final : public PseudoConeModel {
 public:
  ProductLevelModel(std::string name, int n, double c) : PseudoConeModel(Cone::orthant(n)), name_(std::move(name)), n_(n), c_(c) {}

  std::string name() const override { return name_; }
  int smoothness() const override { return 3; }

  double radial(const Vec& w) const override { return eval<double>(std::span(w.data(), w.size())); }

  bool has_jets() const override { return true; }
  Jet radial_jet(const JetVec& w) const override { return eval<Jet>(std::span(w)); }

  std::optional<double> support_closed(const Vec& u) const override {
    // Lagrange: min sum a_i x_i over prod x = c equals n (c prod a_i)^(1/n).
    double prod = c_;
    for (Eigen::Index i = 0; i < u.size(); ++i) prod *= std::abs(u[i]);
    return -n_ * std::pow(prod, 1.0 / n_);
  }

  std::optional<bool> member_closed(const Vec& x, double tol) const override {
    double prod = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (!(x[i] > 0.0)) return false;
      prod *= x[i];
    }
    // Compare on the gauge scale so tol means the same as in member().
    return std::pow(prod / c_, 1.0 / n_) >= 1.0 - tol;
  }

  std::optional<PseudoCone> closed_copolar() const override {
    // K* = {-a : prod a >= 1 / (n^n c)}.
    const double c_star = 1.0 / (std::pow(static_cast<double>(n_), n_) * c_);
    PseudoCone mirrored(std::make_shared<ProductLevelModel>(name_, n_, c_star));
    return linear_image(mirrored, -Mat::Identity(n_, n_));
  }

 private:
  template <class T>
  T eval(std::span<const T> w) const {
    using std::pow;
    T prod = w[0];
    for (std::size_t i = 1; i < w.size(); ++i) prod = prod * w[i];
    return pow(c_ / prod, 1.0 / n_);
  }

  std::string name_;
  int n_;
  double c_;
};

/// {x_1 > 0 : x_2 >= 1/x_1 + delta/x_1^3}. Radial values are closed form, but
/// the family deliberately exposes no jets: it exercises the finite-difference
/// path.
class PerturbedHyperbolaModel final : public PseudoConeModel {
 public:
  explicit PerturbedHyperbolaModel(double delta) : PseudoConeModel(Cone::orthant(2)), delta_(delta) {}

  std::string name() const override { return "perturbed_hyperbola"; }
  int smoothness() const override { return 3; }

  double radial(const Vec& w) const override {
    // t^2 solves w1^3 w2 s^2 - w1^2 s - delta = 0 (positive root).
    const double a = w[0], b = w[1];
    const double a2 = a * a;
    const double s = (a2 + std::sqrt(a2 * a2 + 4.0 * a2 * a * b * delta_)) / (2.0 * a2 * a * b);
    return std::sqrt(s);
  }

  std::optional<bool> member_closed(const Vec& x, double tol) const override {
    if (!(x[0] > 0.0)) return false;
    const double need = 1.0 / x[0] + delta_ / (x[0] * x[0] * x[0]);
    return x[1] >= need * (1.0 - tol);
  }

 private:
  double delta_;
};

Vec default_normal(const Cone& c) {
  if (c.kind() == ConeKind::circular) return c.axis();
  if (c.kind() == ConeKind::orthant) return Vec::Ones(c.dim());
  Vec a = Vec::Zero(c.dim());
  for (const Vec& g : dual(c).generators()) a -= g;
  return a.normalized();
}

/// {x in C : <a, x> >= h}.
class TruncatedConeModel final : public PseudoConeModel {
 public:
  TruncatedConeModel(Cone c, Vec normal, double height)
      : PseudoConeModel(std::move(c)), normal_(std::move(normal)), height_(height) {
    if (!(height_ > 0.0)) throw Error(ErrorKind::InvalidArgument, "truncation height must be positive");
    if (!interior_contains(dual_cone(), -normal_)) {
      throw Error(ErrorKind::InvalidArgument, "truncation normal must lie in the interior of -C°");
    }
  }

  std::string name() const override { return "truncated_cone"; }
  int smoothness() const override { return 0; }
  double radial(const Vec& w) const override { return height_ / normal_.dot(w); }

  std::optional<double> support_closed(const Vec& u) const override {
    // h_K = h_S on C°, S the slice {<a,x> = h} of C.
    const Cone& c = cone();
    if (c.kind() != ConeKind::circular) {
      double best = -std::numeric_limits<double>::infinity();
      for (const Vec& g : c.generators()) best = std::max(best, height_ * u.dot(g) / normal_.dot(g));
      return best;
    }
    const double along = normal_.dot(c.axis());
    if ((normal_ - along * c.axis()).norm() > 1e-14 * normal_.norm()) return std::nullopt;
    const double ua = u.dot(c.axis());
    const double perp = (u - ua * c.axis()).norm();
    return height_ / along * (ua + std::tan(c.half_angle()) * perp);
  }

  std::optional<bool> member_closed(const Vec& x, double tol) const override {
    return cone().contains(x, tol) && normal_.dot(x) >= height_ * (1.0 - tol);
  }

  std::optional<PseudoCone> closed_copolar() const override;

 private:
  Vec normal_;
  double height_;
};

/// z + C.
class ShiftedConeModel final : public PseudoConeModel {
 public:
  ShiftedConeModel(Cone c, Vec apex) : PseudoConeModel(std::move(c)), apex_(std::move(apex)) {
    if (!interior_contains(cone(), apex_)) throw Error(ErrorKind::InvalidArgument, "apex must lie in int C");
  }

  std::string name() const override { return "shifted_cone"; }
  int smoothness() const override { return 0; }

  double radial(const Vec& w) const override {
    const Cone& c = cone();
    if (c.kind() != ConeKind::circular) {
      // t w - z in C iff t <a_j, w> <= <a_j, z> for every facet normal.
      double t = 0.0;
      for (const Vec& a : c.facet_normals()) t = std::max(t, a.dot(apex_) / a.dot(w));
      return t;
    }
    return radial_by_bisection([&](const Vec& x) { return c.contains(x - apex_); }, w);
  }

  std::optional<double> support_closed(const Vec& u) const override { return u.dot(apex_); }

  std::optional<bool> member_closed(const Vec& x, double tol) const override {
    return cone().contains(x - apex_, tol);
  }

  std::optional<PseudoCone> closed_copolar() const override {
    // (z + C)* = {u in C° : <u, -z> >= 1}.
    return PseudoCone(std::make_shared<TruncatedConeModel>(dual_cone(), -apex_, 1.0));
  }

 private:
  Vec apex_;
};

std::optional<PseudoCone> TruncatedConeModel::closed_copolar() const {
  // {x in C : <a,x> >= h}* = -a/h + C°.
  return PseudoCone(std::make_shared<ShiftedConeModel>(dual_cone(), Vec(-normal_ / height_)));
}

}  // namespace

PseudoCone hyperbola(double c) {
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "hyperbola needs c > 0");
  return PseudoCone(std::make_shared<ProductLevelModel>("hyperbola", 2, c));
}

PseudoCone calabi(int n, double c) {
  if (n < 2 || n > kMaxJetVars) throw Error(ErrorKind::InvalidArgument, "calabi needs 2 <= n <= 4");
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "calabi needs c > 0");
  return PseudoCone(std::make_shared<ProductLevelModel>("calabi", n, c));
}

PseudoCone perturbed_hyperbola(double delta) {
  if (!(delta >= 0.0)) throw Error(ErrorKind::InvalidArgument, "perturbed_hyperbola needs delta >= 0");
  return PseudoCone(std::make_shared<PerturbedHyperbolaModel>(delta));
}

PseudoCone truncated_cone(const Cone& c, const Vec& normal, double height) {
  return PseudoCone(std::make_shared<TruncatedConeModel>(c, normal, height));
}

PseudoCone truncated_cone(const Cone& c, double height) { return truncated_cone(c, default_normal(c), height); }

PseudoCone shifted_cone(const Cone& c, const Vec& apex) {
  return PseudoCone(std::make_shared<ShiftedConeModel>(c, apex));
}

Cone make_cone(const ConeSpec& spec) {
  if (spec.kind == "orthant") return Cone::orthant(spec.n);
  if (spec.kind == "circular") return Cone::circular(spec.axis, spec.half_angle);
  if (spec.kind == "polyhedral") return Cone::polyhedral(spec.generators);
  throw Error(ErrorKind::InvalidArgument, "unknown cone kind '" + spec.kind + "'");
}

PseudoCone make_family(const FamilySpec& spec) {
  if (spec.family == "hyperbola") return hyperbola(spec.c);
  if (spec.family == "calabi") return calabi(spec.n, spec.c);
  if (spec.family == "perturbed_hyperbola") return perturbed_hyperbola(spec.delta);
  const Cone c = spec.cone ? make_cone(*spec.cone) : Cone::orthant(2);
  if (spec.family == "truncated_cone") {
    if (spec.normal.size() == 0) return truncated_cone(c, spec.height);
    return truncated_cone(c, spec.normal, spec.height);
  }
  if (spec.family == "shifted_cone") {
    if (spec.apex.size() != c.dim()) throw Error(ErrorKind::InvalidArgument, "shifted_cone apex has wrong dimension");
    return shifted_cone(c, spec.apex);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family '" + spec.family + "'");
}

std::vector<FamilyInfo> list_families() {
  return {
      {"hyperbola", "c > 0 (n = 2)", 3, true, true, true, true},
      {"calabi", "n in [2, 4], c > 0", 3, true, true, true, true},
      {"truncated_cone", "cone C, height h > 0, optional normal a in int(-C°)", 0, true, true, true, false},
      {"shifted_cone", "cone C, apex z in int C", 0, true, true, true, false},
      {"perturbed_hyperbola", "delta >= 0 (n = 2)", 3, true, false, false, false},
  };
}

}  // namespace copolar
