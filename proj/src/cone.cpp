#include "copolar/cone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "copolar/error.hpp"

namespace copolar {
namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_unit_basis(const std::vector<Vec>& gens, int n) {
  if (static_cast<int>(gens.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (const Vec& g : gens) {
    int hit = -1;
    for (int i = 0; i < n; ++i) {
      if (std::abs(g[i] - 1.0) < 1e-14) {
        if (hit >= 0) return false;
        hit = i;
      } else if (std::abs(g[i]) > 1e-14) {
        return false;
      }
    }
    if (hit < 0 || seen[hit]) return false;
    seen[hit] = true;
  }
  return true;
}

// All k-subsets of {0..m-1} in lexicographic order.
void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Cone Cone::circular(const Vec& axis, double half_angle) {
  if (axis.size() < 2) throw Error(ErrorKind::InvalidArgument, "cone dimension must be >= 2");
  if (!(axis.norm() > 0.0)) throw Error(ErrorKind::InvalidArgument, "circular cone axis must be nonzero");
  if (!(half_angle > 0.0 && half_angle < kPi / 2)) {
    throw Error(ErrorKind::InvalidArgument, "circular cone half-angle must lie in (0, pi/2)");
  }
  Cone c;
  c.kind_ = ConeKind::circular;
  c.dim_ = static_cast<int>(axis.size());
  c.axis_ = axis.normalized();
  c.half_angle_ = half_angle;
  c.base_ = c.axis_;
  return c;
}

Cone Cone::orthant(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "cone dimension must be >= 2");
  Cone c;
  c.kind_ = ConeKind::orthant;
  c.dim_ = n;
  for (int i = 0; i < n; ++i) {
    c.generators_.push_back(Vec::Unit(n, i));
    c.facets_.push_back(-Vec::Unit(n, i));
  }
  c.base_ = Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  return c;
}

Cone Cone::polyhedral(std::vector<Vec> generators) {
  if (generators.empty()) throw Error(ErrorKind::InvalidArgument, "polyhedral cone needs generators");
  const auto n = generators.front().size();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "cone dimension must be >= 2");
  if (n > 4) throw Error(ErrorKind::Unsupported, "polyhedral cones are supported for n <= 4 only");
  for (Vec& g : generators) {
    if (g.size() != n || !(g.norm() > 0.0)) throw Error(ErrorKind::InvalidArgument, "invalid cone generator");
    g.normalize();
  }
  if (is_unit_basis(generators, static_cast<int>(n))) return orthant(static_cast<int>(n));
  Cone c;
  c.kind_ = ConeKind::polyhedral;
  c.dim_ = static_cast<int>(n);
  c.generators_ = std::move(generators);
  c.finish_polyhedral();
  return c;
}

void Cone::finish_polyhedral() {
  const int n = dim_;
  const int m = static_cast<int>(generators_.size());
  Mat all(n, m);
  for (int i = 0; i < m; ++i) all.col(i) = generators_[i];
  if (Eigen::FullPivLU<Mat>(all).rank() < n) {
    throw Error(ErrorKind::InvalidArgument, "polyhedral generators do not span an n-dimensional cone");
  }
  const double tol = 1e-12;
  for_each_subset(m, n - 1, [&](const std::vector<int>& subset) {
    Mat rows(n - 1, n);
    for (int r = 0; r < n - 1; ++r) rows.row(r) = generators_[subset[r]].transpose();
    Vec a;
    try {
      a = null_vector(rows, 1e-10);
    } catch (const Error&) {
      return;
    }
    double lo = 0.0, hi = 0.0;
    for (const Vec& g : generators_) {
      lo = std::min(lo, a.dot(g));
      hi = std::max(hi, a.dot(g));
    }
    if (hi > tol && lo < -tol) return;
    if (hi > tol) a = -a;
    if (std::max(std::abs(lo), std::abs(hi)) <= tol) return;
    for (const Vec& f : facets_)
      if ((f - a).norm() < 1e-10) return;
    facets_.push_back(a);
  });
  Mat normals(n, static_cast<Eigen::Index>(facets_.size()));
  for (std::size_t j = 0; j < facets_.size(); ++j) normals.col(static_cast<Eigen::Index>(j)) = facets_[j];
  if (facets_.empty() || Eigen::FullPivLU<Mat>(normals).rank() < n) {
    throw Error(ErrorKind::InvalidArgument, "polyhedral cone is not pointed");
  }
  // Center of the smallest cap holding every generator. It is equiangular to
  // some subset of at most n generators, so enumerate those candidates.
  double best = -1.0;
  for (int k = 1; k <= n; ++k) {
    for_each_subset(m, k, [&](const std::vector<int>& subset) {
      Mat g(n, k);
      for (int i = 0; i < k; ++i) g.col(i) = generators_[subset[i]];
      const Mat gram = g.transpose() * g;
      Eigen::FullPivLU<Mat> lu(gram);
      if (lu.rank() < k) return;
      Vec b = g * lu.solve(Vec::Ones(k));
      const double len = b.norm();
      if (!(len > 0.0)) return;
      b /= len;
      const double t = 1.0 / len;
      for (const Vec& other : generators_)
        if (other.dot(b) < t - 1e-12) return;
      if (t > best + 1e-14) {
        best = t;
        base_ = b;
      }
    });
  }
  if (!(best > 0.0)) throw Error(ErrorKind::InvalidArgument, "polyhedral cone is not pointed");
}

double Cone::slack(const Vec& x) const {
  const double len = x.norm();
  if (!(len > 0.0)) return -kPi;
  if (kind_ == ConeKind::circular) return half_angle_ - angle_between(x, axis_);
  double s = kPi;
  for (const Vec& a : facets_) s = std::min(s, std::asin(std::clamp(-a.dot(x) / len, -1.0, 1.0)));
  return s;
}

bool Cone::contains(const Vec& x, double tol) const {
  if (x.size() != dim_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  if (x.norm() == 0.0) return true;
  return slack(x) >= -tol;
}

double Cone::footprint_angle() const {
  if (kind_ == ConeKind::circular) return half_angle_;
  double m = 0.0;
  for (const Vec& g : generators_) m = std::max(m, angle_between(base_, g));
  return m;
}

CapDomain Cone::footprint_cap() const { return CapDomain{base_, footprint_angle(), 0.0}; }

std::string Cone::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case ConeKind::circular:
      os << "circular(axis=[";
      for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << axis_[i];
      os << "], half_angle=" << half_angle_ << ")";
      break;
    case ConeKind::orthant: os << "orthant(" << dim_ << ")"; break;
    case ConeKind::polyhedral:
      os << "polyhedral(";
      for (std::size_t j = 0; j < generators_.size(); ++j) {
        os << (j ? ",[" : "[");
        for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << generators_[j][i];
        os << "]";
      }
      os << ")";
      break;
  }
  return os.str();
}

Cone dual(const Cone& c) {
  switch (c.kind()) {
    case ConeKind::circular: return Cone::circular(-c.axis(), kPi / 2 - c.half_angle());
    case ConeKind::orthant:
    case ConeKind::polyhedral: return Cone::polyhedral(c.facet_normals());
  }
  throw Error(ErrorKind::InvalidArgument, "unknown cone kind");
}

bool interior_contains(const Cone& c, const Vec& x, double tol) {
  if (x.size() != c.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  return c.slack(x) > tol;
}

Cone linear_image(const Cone& c, const Mat& a) {
  const int n = c.dim();
  if (a.rows() != n || a.cols() != n) throw Error(ErrorKind::InvalidArgument, "linear map has wrong shape");
  if (std::abs(a.determinant()) < 1e-14 * std::max(1.0, a.norm())) {
    throw Error(ErrorKind::Singular, "linear map is not invertible");
  }
  if (c.kind() == ConeKind::circular) {
    const Mat gram = a.transpose() * a;
    const double s2 = gram.trace() / n;
    if ((gram - s2 * Mat::Identity(n, n)).norm() > 1e-12 * s2) {
      throw Error(ErrorKind::Unsupported, "image of a circular cone under a non-conformal map");
    }
    return Cone::circular(a * c.axis(), c.half_angle());
  }
  std::vector<Vec> gens;
  for (const Vec& g : c.generators()) gens.push_back(a * g);
  return Cone::polyhedral(std::move(gens));
}

GnomonicChart::GnomonicChart(const Cone& cone, double margin) : cone_(cone), margin_(margin) {
  if (margin < 0.0) throw Error(ErrorKind::InvalidArgument, "chart margin must be non-negative");
  base_ = cone.base_direction();
  frame_ = complement_basis(base_);
  if (!(cone.slack(base_) > margin)) {
    throw Error(ErrorKind::EmptyFootprint, "margin leaves no interior directions in the footprint");
  }
}

Vec GnomonicChart::direction(const Vec& p) const {
  const Vec w = ambient(p);
  return w / w.norm();
}

JetVec GnomonicChart::ambient_jet(const Vec& p, int order) const {
  const int m = params();
  const int n = ambient_dim();
  JetVec out;
  out.reserve(n);
  const Vec w = ambient(p);
  for (int i = 0; i < n; ++i) {
    Jet j = Jet::constant(m, w[i], order);
    for (int a = 0; a < m; ++a) j += Jet::variable(m, a, 0.0, order) * frame_(i, a);
    out.push_back(j);
  }
  return out;
}

Vec GnomonicChart::to_params(const Vec& v) const {
  const double along = base_.dot(v);
  if (!(along > 0.0)) throw Error(ErrorKind::OutsideCone, "direction is not in the chart hemisphere");
  return frame_.transpose() * v / along;
}

JetVec GnomonicChart::to_params_jet(const JetVec& v) const {
  const int n = ambient_dim();
  if (static_cast<int>(v.size()) != n) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  Jet along = v[0] * base_[0];
  for (int i = 1; i < n; ++i) along += v[i] * base_[i];
  if (!(along.value() > 0.0)) throw Error(ErrorKind::OutsideCone, "direction is not in the chart hemisphere");
  const Jet inv = 1.0 / along;
  JetVec out;
  for (int a = 0; a < params(); ++a) {
    Jet t = v[0] * frame_(0, a);
    for (int i = 1; i < n; ++i) t += v[i] * frame_(i, a);
    out.push_back(t * inv);
  }
  return out;
}

bool GnomonicChart::contains(const Vec& p) const {
  if (p.size() != params()) return false;
  return cone_.slack(ambient(p)) > margin_;
}

double GnomonicChart::inscribed_radius() const {
  if (cone_.kind() == ConeKind::circular) return std::tan(cone_.half_angle() - margin_);
  return std::tan(cone_.slack(base_) - margin_);
}

std::vector<Vec> GnomonicChart::sample(int count, std::uint64_t seed) const {
  if (count < 1) return {};
  CapDomain cap = cone_.footprint_cap();
  if (cone_.kind() == ConeKind::circular) cap.margin = margin_;
  std::vector<Vec> accepted;
  for (int lattice = count; lattice <= 64 * count; lattice *= 2) {
    accepted.clear();
    for (const Vec& v : cap_lattice(cap, lattice, seed)) {
      if (cone_.slack(v) > margin_) accepted.push_back(to_params(v));
    }
    if (static_cast<int>(accepted.size()) >= count) break;
  }
  if (accepted.empty()) throw Error(ErrorKind::EmptyFootprint, "no lattice point inside the chart domain");
  const std::size_t a = accepted.size();
  if (a <= static_cast<std::size_t>(count)) return accepted;
  std::vector<Vec> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(accepted[static_cast<std::size_t>(i) * a / static_cast<std::size_t>(count)]);
  }
  return out;
}

GnomonicChart footprint_chart(const Cone& c, double margin) { return GnomonicChart(c, margin); }

}  // namespace copolar
