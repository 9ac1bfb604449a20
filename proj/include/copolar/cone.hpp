#pragma once

// Pointed closed convex cones with interior points, their duals, and gnomonic
// charts on their spherical footprints.
//
// Dual convention: C° = {u : <u, x> <= 0 for all x in C}. Support functions of
// C-pseudo-cones are non-positive exactly on this cone, so every module uses it.

#include <cstdint>
#include <string>
#include <vector>

#include "copolar/jet.hpp"
#include "copolar/numkit.hpp"

namespace copolar {

enum class ConeKind { circular, orthant, polyhedral };

class Cone {
 public:
  static Cone circular(const Vec& axis, double half_angle);
  static Cone orthant(int n);
  /// Polyhedral cones are limited to n <= 4 (facet enumeration is brute force).
  static Cone polyhedral(std::vector<Vec> generators);

  ConeKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }

  const Vec& axis() const { return axis_; }
  double half_angle() const { return half_angle_; }
  /// Unit generators (orthant: e_i). Empty for circular cones.
  const std::vector<Vec>& generators() const { return generators_; }
  /// Unit outward facet normals a_j with C = {x : <a_j, x> <= 0}.
  const std::vector<Vec>& facet_normals() const { return facets_; }

  /// Signed angular distance from x/|x| to the boundary of C (positive inside).
  double slack(const Vec& x) const;
  bool contains(const Vec& x, double tol = 0.0) const;

  /// Interior direction used as the base of charts and direction searches.
  const Vec& base_direction() const { return base_; }
  /// Largest angle between the base direction and a footprint point.
  double footprint_angle() const;
  /// Cap enclosing the footprint; the cone itself still has to be checked.
  CapDomain footprint_cap() const;

  std::string describe() const;

 private:
  Cone() = default;
  void finish_polyhedral();

  ConeKind kind_ = ConeKind::orthant;
  int dim_ = 0;
  Vec axis_;
  double half_angle_ = 0.0;
  std::vector<Vec> generators_;
  std::vector<Vec> facets_;
  Vec base_;
};

Cone dual(const Cone& c);
/// True iff x lies in int C with angular slack greater than tol.
bool interior_contains(const Cone& c, const Vec& x, double tol = 0.0);
/// Image A*C. Circular cones are accepted only under conformal maps.
Cone linear_image(const Cone& c, const Mat& a);

/// Central projection of the footprint onto the tangent hyperplane at the
/// base direction: p -> (base + frame p) / |base + frame p|.
class GnomonicChart {
 public:
  GnomonicChart(const Cone& cone, double margin);

  int params() const noexcept { return static_cast<int>(frame_.cols()); }
  int ambient_dim() const noexcept { return static_cast<int>(base_.size()); }
  const Vec& base() const { return base_; }
  const Mat& frame() const { return frame_; }
  double margin() const noexcept { return margin_; }
  const Cone& cone() const { return cone_; }

  /// Unnormalized direction base + frame p (radial fields here are homogeneous,
  /// so charts never need the normalization).
  Vec ambient(const Vec& p) const { return base_ + frame_ * p; }
  Vec direction(const Vec& p) const;
  JetVec ambient_jet(const Vec& p, int order) const;
  Vec to_params(const Vec& v) const;
  JetVec to_params_jet(const JetVec& v) const;

  bool contains(const Vec& p) const;
  /// Radius of the largest disk around 0 inside the domain (exact for
  /// circular cones and for margin 0).
  double inscribed_radius() const;
  /// Deterministic low-discrepancy points of the domain.
  std::vector<Vec> sample(int count, std::uint64_t seed = 0) const;

 private:
  Cone cone_;
  double margin_;
  Vec base_;
  Mat frame_;
};

GnomonicChart footprint_chart(const Cone& c, double margin);

}  // namespace copolar
