#include "copolar/pseudocone.hpp"

#include <cmath>
#include <limits>

#include "copolar/error.hpp"

namespace copolar {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// K* over the dual cone. The radial field is -1 / h_K(w) unless a closed
/// copolar is attached, in which case that form is authoritative.
class CopolarModel final : public PseudoConeModel {
 public:
  CopolarModel(PseudoCone source, std::optional<PseudoCone> analytic, SearchOptions opts)
      : PseudoConeModel(source.dual_cone()), source_(std::move(source)), analytic_(std::move(analytic)), opts_(opts) {}

  std::string name() const override { return "copolar(" + source_.name() + ")"; }
  int smoothness() const override { return source_.smoothness(); }

  double radial(const Vec& w) const override {
    if (analytic_) return analytic_->model().radial(w);
    const double h = support(source_, w, opts_);
    if (!(h < 0.0)) throw Error(ErrorKind::DegenerateSupport, "support of the source is not negative");
    return -1.0 / h;
  }

  bool has_jets() const override { return analytic_ && analytic_->model().has_jets(); }
  Jet radial_jet(const JetVec& w) const override {
    if (!has_jets()) return PseudoConeModel::radial_jet(w);
    return analytic_->model().radial_jet(w);
  }

  std::optional<double> support_closed(const Vec& u) const override {
    if (analytic_) return analytic_->model().support_closed(u);
    return std::nullopt;
  }
  std::optional<bool> member_closed(const Vec& x, double tol) const override {
    if (analytic_) return analytic_->model().member_closed(x, tol);
    return std::nullopt;
  }
  std::optional<PseudoCone> closed_copolar() const override {
    if (analytic_) return analytic_->model().closed_copolar();
    return std::nullopt;
  }

 private:
  PseudoCone source_;
  std::optional<PseudoCone> analytic_;
  SearchOptions opts_;
};

class LinearImageModel final : public PseudoConeModel {
 public:
  LinearImageModel(PseudoCone base, Mat a)
      : PseudoConeModel(copolar::linear_image(base.cone(), a)), base_(std::move(base)), a_(std::move(a)),
        inv_(a_.inverse()) {}

  const PseudoCone& base() const { return base_; }
  const Mat& matrix() const { return a_; }

  std::string name() const override { return "linear_image(" + base_.name() + ")"; }
  int smoothness() const override { return base_.smoothness(); }
  double radial(const Vec& w) const override { return base_.model().radial(inv_ * w); }

  bool has_jets() const override { return base_.model().has_jets(); }
  Jet radial_jet(const JetVec& w) const override {
    const auto n = static_cast<Eigen::Index>(w.size());
    JetVec pre;
    pre.reserve(w.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      Jet acc = w[0] * inv_(i, 0);
      for (Eigen::Index j = 1; j < n; ++j) acc += w[j] * inv_(i, j);
      pre.push_back(acc);
    }
    return base_.model().radial_jet(pre);
  }

  std::optional<double> support_closed(const Vec& u) const override {
    return base_.model().support_closed(a_.transpose() * u);
  }
  std::optional<bool> member_closed(const Vec& x, double tol) const override {
    return base_.model().member_closed(inv_ * x, tol);
  }
  std::optional<PseudoCone> closed_copolar() const override {
    auto inner = base_.model().closed_copolar();
    if (!inner) return std::nullopt;
    return copolar::linear_image(*inner, inv_.transpose());
  }

 private:
  PseudoCone base_;
  Mat a_;
  Mat inv_;
};

void check_dim(const PseudoCone& k, const Vec& x) {
  if (x.size() != k.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
}

}  // namespace

PseudoConeModel::PseudoConeModel(Cone cone) : cone_(std::move(cone)), dual_(dual(cone_)) {}

Jet PseudoConeModel::radial_jet(const JetVec&) const {
  throw Error(ErrorKind::Unsupported, name() + " has no analytic derivatives");
}

std::optional<double> PseudoConeModel::support_closed(const Vec&) const { return std::nullopt; }
std::optional<bool> PseudoConeModel::member_closed(const Vec&, double) const { return std::nullopt; }
std::optional<PseudoCone> PseudoConeModel::closed_copolar() const { return std::nullopt; }

PseudoCone::PseudoCone(std::shared_ptr<const PseudoConeModel> model) : model_(std::move(model)) {
  if (!model_) throw Error(ErrorKind::InvalidArgument, "null pseudo-cone model");
}

double radial(const PseudoCone& k, const Vec& v) {
  check_dim(k, v);
  if (!interior_contains(k.cone(), v)) throw Error(ErrorKind::OutsideCone, "direction is not in int C");
  return k.model().radial(v);
}

CapMaximum support_maximizer(const PseudoCone& k, const Vec& u, const SearchOptions& opts) {
  check_dim(k, u);
  const Cone& c = k.cone();
  const auto& model = k.model();
  auto field = [&](const Vec& v) {
    if (!(c.slack(v) > opts.margin)) return -kInf;
    return model.radial(v) * u.dot(v);
  };
  CapMaximum best = maximize_on_cap(field, c.footprint_cap(), opts.restarts, opts.tol, opts.seed);
  // Linear functionals on polyhedral pseudo-cones peak at extreme points, which
  // may sit on the edges of C where the simplex search stalls. Probe each edge
  // just inside the search margin.
  for (const Vec& g : c.generators()) {
    double t = 1e-9;
    Vec v = g + t * c.base_direction();
    while (!(c.slack(v) > opts.margin) && t < 1.0) {
      t *= 2.0;
      v = g + t * c.base_direction();
    }
    // The supremum is the limit at the edge; extrapolate the last step away.
    const double near = field(v);
    const double value = std::isfinite(near) ? 2.0 * near - field(g + 2.0 * t * c.base_direction()) : near;
    if (value > best.value) best = CapMaximum{v.normalized(), value};
  }
  return best;
}

double support_numeric(const PseudoCone& k, const Vec& u, const SearchOptions& opts) {
  check_dim(k, u);
  if (u.norm() == 0.0) return 0.0;
  if (!k.dual_cone().contains(u)) return kInf;
  return support_maximizer(k, u, opts).value;
}

double support(const PseudoCone& k, const Vec& u, const SearchOptions& opts) {
  check_dim(k, u);
  if (u.norm() == 0.0) return 0.0;
  if (!k.dual_cone().contains(u)) return kInf;
  if (auto closed = k.model().support_closed(u)) return *closed;
  return support_maximizer(k, u, opts).value;
}

double gauge(const PseudoCone& k, const Vec& x) {
  check_dim(k, x);
  if (!interior_contains(k.cone(), x)) throw Error(ErrorKind::OutsideCone, "point is not in int C");
  return 1.0 / k.model().radial(x);
}

bool member(const PseudoCone& k, const Vec& x, double tol) {
  check_dim(k, x);
  if (auto closed = k.model().member_closed(x, tol)) return *closed;
  if (!interior_contains(k.cone(), x)) return false;
  return gauge(k, x) >= 1.0 - tol;
}

PseudoCone copolar(const PseudoCone& k, const SearchOptions& opts) {
  auto model = std::make_shared<CopolarModel>(k, k.model().closed_copolar(), opts);
  // A few interior probes catch sources whose support degenerates (o in the
  // closure of K) before anything downstream divides by it.
  const GnomonicChart chart(k.dual_cone(), defaults::kGridMargin);
  for (const Vec& p : chart.sample(8)) {
    const double h = support(k, chart.direction(p), opts);
    if (!(h < -1e-12)) throw Error(ErrorKind::DegenerateSupport, "support is not negative on int C°");
  }
  return PseudoCone(std::move(model));
}

PseudoCone linear_image(const PseudoCone& k, const Mat& a) {
  if (auto* inner = dynamic_cast<const LinearImageModel*>(k.model_ptr().get())) {
    const Mat combined = a * inner->matrix();
    const auto n = combined.rows();
    if ((combined - Mat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-15) return inner->base();
    return PseudoCone(std::make_shared<LinearImageModel>(inner->base(), combined));
  }
  return PseudoCone(std::make_shared<LinearImageModel>(k, a));
}

double radial_by_bisection(const std::function<bool(const Vec&)>& inside, const Vec& w) {
  const double len = w.norm();
  if (!(len > 0.0)) throw Error(ErrorKind::InvalidArgument, "zero direction");
  double lo = defaults::kBisectionLower / len;
  if (inside(lo * w)) throw Error(ErrorKind::Degenerate, "origin lies in the closure of K");
  double hi = 1.0 / len;
  for (int it = 0; !inside(hi * w); ++it) {
    if (it > 200) throw Error(ErrorKind::OutsideCone, "ray never enters K");
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > defaults::kBisectionRelTol * hi) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid * w) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace copolar
