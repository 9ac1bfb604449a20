#include "copolar/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "copolar/error.hpp"

namespace copolar {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RangeBest {
  double value = -kInf;
  Vec direction;
  double radius = 0.0;
};

RangeBest search_range(const ExtendedField& f, const Vec& x, const LegendreSearch& s, double r_max) {
  auto along = [&](const Vec& v) {
    const double xv = x.dot(v);
    if (s.ray_degree) {
      const double fv = f(v);
      if (fv == kInf) return ScalarMaximum{0.0, -kInf};
      const double d = *s.ray_degree;
      return maximize_interval([&](double r) { return r * xv - std::pow(r, d) * fv; }, s.r_min, r_max, s.radial_scan);
    }
    return maximize_interval([&](double r) { return r * xv - f(r * v); }, s.r_min, r_max, s.radial_scan);
  };
  const CapMaximum best = maximize_on_cap([&](const Vec& v) { return along(v).value; }, s.cap, s.restarts, s.tol,
                                          s.seed);
  return {best.value, best.direction, along(best.direction).argmax};
}

}  // namespace

double htilde(const PseudoCone& k, const Vec& u, const SearchOptions& opts) {
  const double h = support(k, u, opts);
  if (h == kInf) return kInf;
  return -0.5 * h * h;
}

double HTilde::operator()(const Vec& u) const { return htilde(k, u, search); }

LegendreResult legendre(const ExtendedField& f, const Vec& x, const LegendreSearch& search) {
  search.cap.validate();
  if (!(search.r_max > search.r_min) || search.r_min < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "legendre needs 0 <= r_min < r_max");
  }
  LegendreResult out;
  double r_max = search.r_max;
  RangeBest best;
  for (int d = 0; d <= search.doublings; ++d, r_max *= 2.0) {
    best = search_range(f, x, search, r_max);
    out.range_values.push_back(best.value);
    out.argmax = best.radius * best.direction;
    const bool on_edge = best.radius >= r_max * (1.0 - 1e-6);
    if (!on_edge) {
      out.value = best.value;
      return out;
    }
  }
  bool increasing = true;
  for (std::size_t i = 1; i < out.range_values.size(); ++i) {
    increasing = increasing && out.range_values[i] > out.range_values[i - 1];
  }
  if (increasing && search.doublings > 0) {
    out.value = kInf;
    out.diverged = true;
    out.escape_ray = best.direction;
  } else {
    out.value = out.range_values.back();
  }
  return out;
}

double ratio_support(const PseudoCone& k, const Vec& x, const SearchOptions& opts) {
  if (x.size() != k.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  if (x.norm() == 0.0) return 0.0;
  if (!k.cone().contains(x)) return kInf;
  const Cone& dc = k.dual_cone();
  auto ratio = [&](const Vec& w) {
    if (!(dc.slack(w) > opts.margin)) return -kInf;
    const double h = support(k, w, opts);
    if (!(h < 0.0)) return -kInf;
    return x.dot(w) / -h;
  };
  return maximize_on_cap(ratio, dc.footprint_cap(), opts.restarts, opts.tol, opts.seed).value;
}

double scale_saddle(const PseudoCone& k, const Vec& x, const SearchOptions& opts) {
  if (!interior_contains(k.cone(), x)) throw Error(ErrorKind::OutsideCone, "scale_saddle needs x in int C");
  const double lambda = ratio_support(k, x, opts);
  // The minimizer is a = -lambda > 0; the bracket keeps it strictly inside.
  const double hi = 2.0 * std::abs(lambda) + 1.0;
  const ScalarMaximum m = maximize_interval([&](double a) { return -(a * lambda + 0.5 * a * a); }, 0.0, hi, 64, 1e-14);
  return -m.value;
}

std::vector<Vec> shell_grid(const Cone& c, int count, const std::vector<double>& shells, double margin,
                            std::uint64_t seed) {
  if (shells.empty()) throw Error(ErrorKind::InvalidArgument, "grid needs at least one shell");
  const GnomonicChart chart(c, margin);
  const int per_shell = std::max(1, count / static_cast<int>(shells.size()));
  const std::vector<Vec> params = chart.sample(per_shell, seed);
  std::vector<Vec> out;
  for (double r : shells) {
    for (const Vec& p : params) out.push_back(r * chart.direction(p));
  }
  return out;
}

LegendreAudit audit_legendre(const PseudoCone& k, const LegendreGrid& grid) {
  const PseudoCone k_star = copolar(k, grid.search);
  const std::vector<Vec> points = shell_grid(k.cone(), grid.count, grid.shells, grid.margin, grid.seed);

  LegendreSearch sup_search;
  sup_search.cap = k.dual_cone().footprint_cap();
  sup_search.r_max = grid.radius;
  sup_search.seed = grid.seed;
  sup_search.ray_degree = 2.0;
  const HTilde f{k, grid.search};

  struct Row {
    double target, saddle;
    LegendreResult sup;
  };
  auto rows = map_samples<Row>(
      points.size(),
      [&](std::size_t i) {
        const Vec& x = points[i];
        const double h = support(k_star, x, grid.search);
        return Row{-0.5 * h * h, scale_saddle(k, x, grid.search), legendre(f, x, sup_search)};
      },
      grid.exec);

  AuditBuilder saddle("eq2_1n.saddle", grid.saddle_tolerance);
  AuditBuilder sup("eq2_1n.sup", grid.sup_tolerance);
  int diverged = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& r = rows[i];
    if (!r.value) {
      saddle.add_failure(points[i], r.error, r.kind);
      sup.add_failure(points[i], r.error, r.kind);
      continue;
    }
    const double abs_s = std::abs(r.value->saddle - r.value->target);
    saddle.add(points[i], r.value->saddle, r.value->target, abs_s, relative_error(r.value->saddle, r.value->target),
               abs_s);

    Witness w;
    w.point = points[i];
    w.lhs = r.value->sup.value;
    w.rhs = r.value->target;
    if (r.value->sup.diverged) {
      ++diverged;
      w.error = kInf;
      w.ray = r.value->sup.escape_ray;
      w.note = "supremum diverges along the escape ray";
      sup.add(std::move(w), kInf, kInf);
    } else {
      const double abs_e = std::abs(w.lhs - w.rhs);
      w.error = abs_e;
      sup.add(std::move(w), abs_e, relative_error(r.value->sup.value, r.value->target));
    }
  }
  sup.metric("diverged_points", diverged);
  sup.metric("grid_points", static_cast<double>(points.size()));
  return {saddle.finish(), sup.finish()};
}

}  // namespace copolar
