#pragma once

// Boundary charts X(p) = rho(w(p)) w(p) of pseudo-cones, their normals and
// fundamental forms, Gauss curvature, the crucial map f_K = -grad(F^2/2), and
// the equiaffine product identity.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "copolar/audit_report.hpp"
#include "copolar/parallel.hpp"
#include "copolar/pseudocone.hpp"

namespace copolar {

/// A parametrization p -> w(p) of directions in int C. Directions need not be
/// unit: radial fields are homogeneous of degree -1, so X does not care.
struct DirectionMap {
  std::string name;
  int params = 0;
  int dim = 0;
  std::function<Vec(const Vec&)> at;
  std::function<JetVec(const Vec&, int)> jet;
  std::function<bool(const Vec&)> contains;
  std::function<Vec(const Vec&)> to_params;
  std::function<JetVec(const JetVec&)> to_params_jet;
  std::function<std::vector<Vec>(int, std::uint64_t)> sample;
};

DirectionMap gnomonic_directions(const GnomonicChart& chart);
/// w(t) = (e^t, e^-t) on the positive quadrant; X(t) = (e^t, e^-t) for xy = 1.
DirectionMap exponential_directions(double sample_range = 1.0);
/// p -> inner(s p).
DirectionMap rescaled(DirectionMap inner, double s);

class BoundaryChart {
 public:
  BoundaryChart(PseudoCone k, DirectionMap dirs);
  /// Gnomonic chart over the footprint of the recession cone.
  static BoundaryChart footprint(const PseudoCone& k, double margin = defaults::kGridMargin);

  const PseudoCone& pseudo_cone() const { return k_; }
  const DirectionMap& directions() const { return dirs_; }
  int params() const { return dirs_.params; }
  int dim() const { return dirs_.dim; }
  /// Exact jets when the family provides them, finite differences otherwise.
  bool analytic() const { return k_.analytic(); }
  double budget() const { return analytic() ? defaults::kAnalyticBudget : defaults::kFdCurvatureBudget; }

  bool contains(const Vec& p) const { return dirs_.contains(p); }
  Vec to_params(const Vec& x) const { return dirs_.to_params(x); }
  Vec point(const Vec& p) const;
  /// Taylor data of X at p up to `order` (<= 3).
  JetVec surface(const Vec& p, int order) const;
  std::vector<Vec> sample(int count, std::uint64_t seed = 0) const { return dirs_.sample(count, seed); }

 private:
  PseudoCone k_;
  DirectionMap dirs_;
};

/// Unnormalized normal field (generalized cross product of the X_alpha) with
/// <N~, X> < 0 at the expansion point.
JetVec cofactor_normal(const JetVec& x);

/// Jets of X* = N~ / (-<X, N~>) along a chart; equals f_K o X.
JetVec copolar_surface(const JetVec& x);

struct CurvatureSample {
  Vec p;
  Vec x;
  Vec normal;
  Mat g;
  Mat b;
  double kappa = 0.0;
  double kappa_det = 0.0;  // determinant-ratio form with N_alpha
  double rho_aff = 0.0;
};

Vec outer_normal(const BoundaryChart& chart, const Vec& p);
/// det b / det g; throws NoiseBudgetExceeded if the determinant-ratio form
/// disagrees by more than 10x the derivative-noise budget.
double gauss_curvature(const BoundaryChart& chart, const Vec& p);
CurvatureSample curvature_sample(const BoundaryChart& chart, const Vec& p);
/// <x, nu> / kappa^(1/(n+1)); throws Degenerate for kappa <= 0.
double equiaffine_support(const BoundaryChart& chart, const Vec& p);

struct CrucialPair {
  Vec x;
  Vec x_star;
  double pairing = 0.0;  // <x, x*>
};

/// Gradient and Hessian of F^2/2 at an interior point.
Vec half_gauge_sq_gradient(const PseudoCone& k, const Vec& x);
Mat half_gauge_sq_hessian(const PseudoCone& k, const Vec& x);

/// f_K(x) = -grad(F^2/2)(x) for any x in int C (degree-1 homogeneous extension).
Vec crucial_image(const PseudoCone& k, const Vec& x);
/// Crucial pair at a boundary point; NotOnBoundary unless |F(x) - 1| <= 1e-8.
CrucialPair crucial_map(const PseudoCone& k, const Vec& x);
/// -G(x) x with G = Hess(F^2/2).
Vec crucial_map_hessian(const PseudoCone& k, const Vec& x);

struct SampleSpec {
  int count = 50;
  double margin = defaults::kGridMargin;
  double tolerance = 1e-8;
  Exec exec = Exec::openmp;
  std::uint64_t seed = 0;
  SearchOptions search{};
};

/// F(x) vs H(f_K(x)) on interior points at radii 1 and 3.
AuditReport check_gauge_equality(const PseudoCone& k, const SampleSpec& spec = {});

/// The contracts behind crucial pairs on chart boundary points: pairing,
/// f_{K*} o f_K = id and the Hessian form. One report per contract.
struct CrucialAudit {
  AuditReport pairing;
  AuditReport involution;
  AuditReport hessian;
};

struct CrucialTolerances {
  double pairing = 1e-9;
  double involution = 1e-7;
  double hessian = 0.0;  // 0: 1e-8 analytic, 1e-5 finite differences
};

CrucialAudit check_crucial_pairs(const PseudoCone& k, const SampleSpec& spec = {}, CrucialTolerances tol = {});

struct CurvatureRow {
  std::string family;
  int n = 0;
  Vec chart_u;
  Vec x;
  double kappa = 0.0;
  double rho_aff = 0.0;
  double pair_product = 0.0;
};

struct ProductAudit {
  AuditReport report;
  std::vector<CurvatureRow> rows;
};

/// rho_aff(K, x) * rho_aff(K*, x*) vs 1 over crucial pairs sampled from the
/// K chart. The K* side uses its own radial field and chart.
ProductAudit check_product_identity(const PseudoCone& k, const SampleSpec& spec = {});

/// Equiaffine support of K* at x*, read on K*'s own gnomonic chart.
double copolar_equiaffine_support(const PseudoCone& k_star, const Vec& x_star);

struct AffineSphereStats {
  double mean = 0.0;
  double max_rel_deviation = 0.0;
  double mean_star = 0.0;
  double max_rel_deviation_star = 0.0;
  std::size_t samples = 0;
  // Per-point values (boundary point, rho_aff) for K and for K*.
  std::vector<std::pair<Vec, double>> values;
  std::vector<std::pair<Vec, double>> values_star;
};

AffineSphereStats affine_sphere_statistic(const PseudoCone& k, const SampleSpec& spec = {});

}  // namespace copolar
