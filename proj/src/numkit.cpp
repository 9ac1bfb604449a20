#include "copolar/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "copolar/error.hpp"

namespace copolar {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

double checked(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "non-finite value in finite-difference stencil");
  return v;
}

// Richardson table over halving steps for an estimator with an even error
// expansion in h.
template <class Estimator>
double richardson(const Estimator& estimate, double h, int levels) {
  std::vector<double> row(levels);
  for (int k = 0; k < levels; ++k) row[k] = estimate(h / std::ldexp(1.0, k));
  for (int j = 1; j < levels; ++j) {
    const double factor = std::ldexp(1.0, 2 * j);
    for (int k = 0; k + j < levels; ++k) row[k] = (factor * row[k + 1] - row[k]) / (factor - 1.0);
  }
  return row[0];
}

double frac(double x) { return x - std::floor(x); }

}  // namespace

void StepPolicy::validate() const {
  if (base_step < 0.0 || !std::isfinite(base_step)) throw Error(ErrorKind::InvalidArgument, "base_step must be positive");
  if (richardson_levels < 1 || richardson_levels > 4) {
    throw Error(ErrorKind::InvalidArgument, "richardson_levels must lie in [1, 4]");
  }
  if (order < 1 || order > 3) throw Error(ErrorKind::InvalidArgument, "derivative order must lie in {1, 2, 3}");
}

double StepPolicy::step_at(const Vec& x) const {
  validate();
  if (base_step > 0.0) return base_step;
  const double eps = std::numeric_limits<double>::epsilon();
  return std::pow(eps, 1.0 / (order + 2)) * (1.0 + x.norm());
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Tensor3::asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        const double v = (*this)(i, j, k);
        worst = std::max({worst, std::abs(v - (*this)(i, k, j)), std::abs(v - (*this)(j, i, k)),
                          std::abs(v - (*this)(j, k, i)), std::abs(v - (*this)(k, i, j)),
                          std::abs(v - (*this)(k, j, i))});
      }
  return worst;
}

void Tensor3::symmetrize() {
  Tensor3 out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        out(i, j, k) = ((*this)(i, j, k) + (*this)(i, k, j) + (*this)(j, i, k) + (*this)(j, k, i) +
                        (*this)(k, i, j) + (*this)(k, j, i)) /
                       6.0;
      }
  *this = std::move(out);
}

Vec grad_fd(const ScalarField& f, const Vec& x, StepPolicy policy) {
  policy.order = 1;
  const double h = policy.step_at(x);
  const auto n = x.size();
  Vec g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g[i] = richardson(
        [&](double s) {
          Vec xp = x, xm = x;
          xp[i] += s;
          xm[i] -= s;
          return (checked(f(xp)) - checked(f(xm))) / (2.0 * s);
        },
        h, policy.richardson_levels);
  }
  return g;
}

Mat hess_fd(const ScalarField& f, const Vec& x, StepPolicy policy) {
  policy.order = 2;
  const double h = policy.step_at(x);
  const auto n = x.size();
  const double f0 = checked(f(x));
  Mat H(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = richardson(
          [&](double s) {
            if (i == j) {
              Vec xp = x, xm = x;
              xp[i] += s;
              xm[i] -= s;
              return (checked(f(xp)) - 2.0 * f0 + checked(f(xm))) / (s * s);
            }
            auto at = [&](double si, double sj) {
              Vec y = x;
              y[i] += si * s;
              y[j] += sj * s;
              return checked(f(y));
            };
            return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * s * s);
          },
          h, policy.richardson_levels);
      H(i, j) = v;
      H(j, i) = v;
    }
  }
  return H;
}

Tensor3 third_fd(const ScalarField& f, const Vec& x, StepPolicy policy) {
  policy.order = 3;
  const double h = policy.step_at(x);
  const int n = static_cast<int>(x.size());
  Tensor3 T(n);
  auto shifted = [&](std::initializer_list<std::pair<int, double>> moves) {
    Vec y = x;
    for (auto [idx, amount] : moves) y[idx] += amount;
    return checked(f(y));
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const double v = richardson(
            [&](double s) {
              if (i == j && j == k) {
                return (shifted({{i, 2 * s}}) - 2.0 * shifted({{i, s}}) + 2.0 * shifted({{i, -s}}) -
                        shifted({{i, -2 * s}})) /
                       (2.0 * s * s * s);
              }
              if (i == j || j == k) {
                // Second difference along the repeated index, central in the other.
                const int rep = (i == j) ? i : k;
                const int other = (i == j) ? k : i;
                auto second = [&](double o) {
                  return (shifted({{rep, s}, {other, o}}) - 2.0 * shifted({{other, o}}) +
                          shifted({{rep, -s}, {other, o}})) /
                         (s * s);
                };
                return (second(s) - second(-s)) / (2.0 * s);
              }
              double acc = 0.0;
              for (int a = -1; a <= 1; a += 2)
                for (int b = -1; b <= 1; b += 2)
                  for (int c = -1; c <= 1; c += 2) acc += a * b * c * shifted({{i, a * s}, {j, b * s}, {k, c * s}});
              return acc / (8.0 * s * s * s);
            },
            h, policy.richardson_levels);
        const int perm[6][3] = {{i, j, k}, {i, k, j}, {j, i, k}, {j, k, i}, {k, i, j}, {k, j, i}};
        for (const auto& p : perm) T(p[0], p[1], p[2]) = v;
      }
  return T;
}

void CapDomain::validate() const {
  if (center.size() < 2 || std::abs(center.norm() - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "cap center must be a unit vector in dimension >= 2");
  }
  if (!(max_angle > 0.0 && max_angle < kPi / 2 + 1e-12)) {
    throw Error(ErrorKind::InvalidArgument, "cap max_angle must lie in (0, pi/2)");
  }
  if (margin < 0.0) throw Error(ErrorKind::InvalidArgument, "cap margin must be non-negative");
  if (!(effective_angle() > 0.0)) throw Error(ErrorKind::Degenerate, "cap is empty after applying the margin");
}

Mat complement_basis(const Vec& unit) {
  const auto n = unit.size();
  const Mat column = unit;
  Eigen::HouseholderQR<Mat> qr(column);
  Mat Q = qr.householderQ() * Mat::Identity(n, n);
  return Q.rightCols(n - 1);
}

Vec null_vector(const Mat& rows, double tol) {
  const auto n = rows.cols();
  if (rows.rows() != n - 1) throw Error(ErrorKind::InvalidArgument, "null_vector expects an (n-1) x n matrix");
  if (n == 2) {
    Vec v(2);
    v << -rows(0, 1), rows(0, 0);
    const double len = v.norm();
    if (!(len > tol)) throw Error(ErrorKind::RankDeficient, "tangent vector vanishes");
    return v / len;
  }
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (!(s[s.size() - 1] > tol * std::max(1.0, s[0]))) {
    throw Error(ErrorKind::RankDeficient, "tangent vectors are nearly dependent");
  }
  return svd.matrixV().col(n - 1);
}

double angle_between(const Vec& a, const Vec& b) {
  // atan2 form stays accurate for nearly parallel vectors.
  const double cross = std::sqrt(std::max(0.0, a.squaredNorm() * b.squaredNorm() - a.dot(b) * a.dot(b)));
  return std::atan2(cross, a.dot(b));
}

std::vector<Vec> cap_lattice(const CapDomain& cap, int count, std::uint64_t seed) {
  cap.validate();
  const auto n = cap.center.size();
  const double beta = cap.effective_angle();
  const Mat E = complement_basis(cap.center);
  std::vector<Vec> out;
  out.reserve(count);
  const double shift = frac(0.5 + 0.6180339887498949 * static_cast<double>(seed));
  auto direction = [&](double polar, const Vec& tangent_unit) -> Vec {
    return std::cos(polar) * cap.center + std::sin(polar) * (E * tangent_unit);
  };
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double t = -beta + 2.0 * beta * (i + shift) / count;
      out.push_back(std::cos(t) * cap.center + std::sin(t) * E.col(0));
    }
    return out;
  }
  if (n == 3) {
    const double golden = 0.6180339887498949;
    const double spin = frac(0.7548776662466927 * static_cast<double>(seed));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (1.0 - std::cos(beta)) * (i + 0.5) / count;
      const double psi = 2.0 * kPi * frac(i * golden + spin);
      Vec t(2);
      t << std::cos(psi), std::sin(psi);
      out.push_back(direction(std::acos(std::clamp(z, -1.0, 1.0)), t));
    }
    return out;
  }
  // Additive recurrence (R_d sequence) in the tangent ball.
  const auto d = n - 1;
  double phi = 2.0;
  for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (d + 1));
  Vec alpha(d);
  for (Eigen::Index k = 0; k < d; ++k) alpha[k] = std::pow(1.0 / phi, k + 1);
  for (long i = 1; static_cast<int>(out.size()) < count && i < 200L * count; ++i) {
    Vec y(d);
    for (Eigen::Index k = 0; k < d; ++k) y[k] = 2.0 * frac(shift + i * alpha[k]) - 1.0;
    const double r = y.norm();
    if (r >= 1.0) continue;
    if (r == 0.0) {
      out.push_back(cap.center);
      continue;
    }
    out.push_back(direction(beta * r, y / r));
  }
  return out;
}

SimplexResult nelder_mead_min(const ScalarField& f, const Vec& start, double step, double xtol, int max_iterations) {
  const auto d = start.size();
  auto eval = [&](const Vec& p) {
    const double v = f(p);
    return std::isfinite(v) ? v : kInf;
  };
  std::vector<Vec> pts(d + 1, start);
  std::vector<double> vals(d + 1);
  for (Eigen::Index k = 0; k < d; ++k) pts[k + 1][k] += step;
  for (Eigen::Index k = 0; k <= d; ++k) vals[k] = eval(pts[k]);

  std::vector<int> order(d + 1);
  int it = 0;
  for (; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order.front();
    const int worst = order.back();
    const int second_worst = order[d > 0 ? d - 1 : 0];

    double diameter = 0.0;
    for (const Vec& p : pts) diameter = std::max(diameter, (p - pts[best]).norm());
    if (diameter <= xtol) break;

    Vec centroid = Vec::Zero(d);
    for (Eigen::Index k = 0; k <= d; ++k)
      if (k != worst) centroid += pts[k];
    centroid /= static_cast<double>(d);

    const Vec reflected = centroid + (centroid - pts[worst]);
    const double fr = eval(reflected);
    if (fr < vals[best]) {
      const Vec expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second_worst]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vec contracted = outside ? Vec(centroid + 0.5 * (reflected - centroid))
                                   : Vec(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (Eigen::Index k = 0; k <= d; ++k) {
      if (k == best) continue;
      pts[k] = pts[best] + 0.5 * (pts[k] - pts[best]);
      vals[k] = eval(pts[k]);
    }
  }
  const auto best_it = std::min_element(vals.begin(), vals.end());
  const auto best = static_cast<std::size_t>(best_it - vals.begin());
  return {pts[best], vals[best], it};
}

CapMaximum maximize_on_cap(const DirectionField& g, const CapDomain& cap, int restarts, double tol,
                           std::uint64_t seed) {
  cap.validate();
  if (restarts < 1) throw Error(ErrorKind::InvalidArgument, "restarts must be >= 1");
  const auto n = cap.center.size();
  const int count = n == 2 ? defaults::kScanPoints2D : (n == 3 ? defaults::kScanPoints3D : defaults::kScanPointsND);
  const std::vector<Vec> scan = cap_lattice(cap, count, seed);

  auto safe = [&](const Vec& v) {
    const double val = g(v);
    return std::isfinite(val) ? val : -kInf;
  };
  std::vector<double> vals(scan.size());
  for (std::size_t i = 0; i < scan.size(); ++i) vals[i] = safe(scan[i]);

  std::vector<std::size_t> rank(scan.size());
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
    if (vals[a] != vals[b]) return vals[a] > vals[b];
    return std::lexicographical_compare(scan[a].data(), scan[a].data() + n, scan[b].data(), scan[b].data() + n);
  });

  CapMaximum best{scan[rank[0]], vals[rank[0]]};
  if (!std::isfinite(best.value)) {
    throw Error(ErrorKind::Degenerate, "direction field is not finite anywhere on the cap");
  }

  // Refinement runs in gnomonic coordinates of the cap.
  const Mat E = complement_basis(cap.center);
  const double radius = std::tan(cap.effective_angle());
  auto to_dir = [&](const Vec& p) -> Vec {
    Vec w = cap.center + E * p;
    return w / w.norm();
  };
  auto objective = [&](const Vec& p) {
    if (p.norm() > radius) return kInf;
    return -safe(to_dir(p));
  };
  const double spacing =
      std::max(1e-6, radius * std::pow(static_cast<double>(count), -1.0 / static_cast<double>(n - 1)));
  const int k = std::min<int>(restarts, static_cast<int>(scan.size()));
  for (int r = 0; r < k; ++r) {
    const Vec& v = scan[rank[r]];
    if (!std::isfinite(vals[rank[r]])) break;
    const Vec p0 = E.transpose() * v / cap.center.dot(v);
    const SimplexResult res = nelder_mead_min(objective, p0, spacing, tol);
    if (-res.value > best.value) best = {to_dir(res.x), -res.value};
  }
  return best;
}

ScalarMaximum maximize_interval(const std::function<double(double)>& phi, double lo, double hi, int scan,
                                double xtol) {
  if (!(hi > lo) || scan < 2) throw Error(ErrorKind::InvalidArgument, "maximize_interval needs lo < hi");
  auto safe = [&](double t) {
    const double v = phi(t);
    return std::isnan(v) ? -kInf : v;
  };
  int best = 0;
  double best_val = -kInf;
  std::vector<double> ts(scan + 1), vs(scan + 1);
  for (int i = 0; i <= scan; ++i) {
    ts[i] = lo + (hi - lo) * i / scan;
    vs[i] = safe(ts[i]);
    if (vs[i] > best_val) {
      best_val = vs[i];
      best = i;
    }
  }
  ScalarMaximum out{ts[best], best_val};
  if (!std::isfinite(best_val)) return out;
  double a = ts[std::max(best - 1, 0)];
  double b = ts[std::min(best + 1, scan)];
  const double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = safe(c), fd = safe(d);
  for (int it = 0; it < 400 && (b - a) > xtol * (1.0 + std::abs(a)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = safe(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = safe(d);
    }
  }
  const double t = 0.5 * (a + b);
  const double ft = safe(t);
  for (auto [x, v] : {std::pair{t, ft}, std::pair{c, fc}, std::pair{d, fd}}) {
    if (v > out.value) out = {x, v};
  }
  return out;
}

}  // namespace copolar
