#pragma once

// Legendre-type transforms of the squared support function, the ratio form of
// the copolar support, and the two-reading audit of L h~_K = h~_{K*}.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "copolar/audit_report.hpp"
#include "copolar/parallel.hpp"
#include "copolar/pseudocone.hpp"

namespace copolar {

/// Extended-real field; +inf marks "outside the domain".
using ExtendedField = std::function<double(const Vec&)>;

/// u -> -h_K(u)^2 / 2 on C°, +inf elsewhere.
struct HTilde {
  PseudoCone k;
  SearchOptions search{};
  double operator()(const Vec& u) const;
};

double htilde(const PseudoCone& k, const Vec& u, const SearchOptions& opts = {});

/// Search region for a Legendre supremum: directions in `cap`, radii in
/// [r_min, r_max]. The radial range is doubled up to `doublings` times while the
/// maximizer sits on its outer end.
struct LegendreSearch {
  CapDomain cap;
  double r_min = 0.0;
  double r_max = defaults::kLegendreRadius;
  int radial_scan = defaults::kLegendreRadialScan;
  int doublings = defaults::kLegendreDoublings;
  int restarts = defaults::kRestarts;
  double tol = defaults::kCapTolerance;
  std::uint64_t seed = 0;
  /// If f(t u) = t^d f(u) for t > 0, f is evaluated once per direction.
  std::optional<double> ray_degree;
};

struct LegendreResult {
  double value = 0.0;     // +inf when diverged
  bool diverged = false;
  Vec argmax;             // best point of the last range searched
  Vec escape_ray;         // unit direction of growth when diverged
  std::vector<double> range_values;  // best value per searched range
};

/// sup { <x, u> - f(u) } over the search region, with divergence detection.
LegendreResult legendre(const ExtendedField& f, const Vec& x, const LegendreSearch& search);

/// sup over u in C° \ {o} of <x, u> / (-h_K(u)); +inf for x outside C.
double ratio_support(const PseudoCone& k, const Vec& x, const SearchOptions& opts = {});

/// min over a > 0 of a * ratio_support(K, x) + a^2 / 2, for x in int C.
double scale_saddle(const PseudoCone& k, const Vec& x, const SearchOptions& opts = {});

struct LegendreGrid {
  int count = 50;
  std::vector<double> shells{1.0, 3.0};
  double margin = defaults::kGridMargin;
  double saddle_tolerance = 1e-8;
  double sup_tolerance = 1e-8;
  double radius = defaults::kLegendreRadius;
  SearchOptions search{};
  Exec exec = Exec::openmp;
  std::uint64_t seed = 0;
};

struct LegendreAudit {
  AuditReport saddle;  // scale_saddle(K, x) vs h~_{K*}(x)
  AuditReport sup;     // legendre(h~_K, x) vs h~_{K*}(x)
};

/// Interior grid: low-discrepancy footprint directions at each radial shell.
std::vector<Vec> shell_grid(const Cone& c, int count, const std::vector<double>& shells, double margin,
                            std::uint64_t seed = 0);

LegendreAudit audit_legendre(const PseudoCone& k, const LegendreGrid& grid = {});

}  // namespace copolar
