#pragma once

// Centro-affine invariants of a boundary chart X with normalization -X and
// conormal X* = f_K o X: metric G_ab = <X*, X_ab>, its Levi-Civita symbols, and
// the cubic form A_abc = -<X*_c, X_a||b>.

#include <optional>

#include "copolar/audit_report.hpp"
#include "copolar/diffgeo.hpp"

namespace copolar {

struct CentroAffineFrame {
  Vec p;
  JetVec x;       // X to third order
  JetVec x_star;  // X* to second order
  Mat G;
  Mat G_inv;
  Tensor3 dG;     // dG(a, b, c) = d_c G_ab
  Tensor3 gamma;  // gamma(c, a, b) = Gamma^c_ab (symmetric in a, b only)
  Tensor3 A;      // symmetrized
  double metric_form_gap = 0.0;  // max |<X*, X_ab> + <X*_a, X_b>|
  double cubic_asymmetry = 0.0;  // before symmetrization
  double ricci_gap = 0.0;        // max |G_ab||c|
  /// Direct form <X*, X_a||b||c>; analytic charts only.
  std::optional<Tensor3> A_direct;
};

/// Gamma^c_ab = G^cd (d_a G_db + d_b G_da - d_d G_ab) / 2.
Tensor3 christoffel_from_metric(const Mat& G, const Tensor3& dG);

CentroAffineFrame centroaffine_frame(const BoundaryChart& chart, const Vec& p);

Mat ca_metric(const BoundaryChart& chart, const Vec& p);
Tensor3 christoffel(const BoundaryChart& chart, const Vec& p);
Tensor3 cubic_form(const BoundaryChart& chart, const Vec& p);

/// Pullback of a covariant 2-tensor / 3-tensor through the Jacobian J (rows:
/// target coordinates, columns: source coordinates).
Mat pull_back(const Mat& t, const Mat& J);
Tensor3 pull_back(const Tensor3& t, const Mat& J);

struct TensorSpec {
  int count = 20;
  double margin = defaults::kGridMargin;
  double metric_tolerance = 1e-8;
  double cubic_tolerance = 1e-8;
  Exec exec = Exec::openmp;
  std::uint64_t seed = 0;
  SearchOptions search{};
  /// Chart for K; the footprint chart when empty.
  std::optional<DirectionMap> chart;
};

struct TensorAudit {
  AuditReport metric;  // |G - G_bar|
  AuditReport cubic;   // |A + A_bar|
};

/// G vs G_bar and A vs -A_bar at shared parameters. The K* tensors are
/// computed on K*'s own chart from its own radial field and pulled back along
/// q(p) = chart*(X*(p)).
TensorAudit check_tensor_identities(const PseudoCone& k, const TensorSpec& spec = {});

}  // namespace copolar
