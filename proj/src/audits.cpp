#include "copolar/audits.hpp"

#include <cmath>
#include <limits>

#include "copolar/centroaffine.hpp"
#include "copolar/duality.hpp"

namespace copolar {
namespace {


std::vector<Vec> unit_directions(const Cone& c, int count, double margin, std::uint64_t seed) {
  const GnomonicChart chart(c, margin);
  std::vector<Vec> out;
  for (const Vec& p : chart.sample(count, seed)) out.push_back(chart.direction(p));
  return out;
}

SearchOptions search_for(const Scenario& s) {
  SearchOptions o;
  o.seed = s.seed;
  return o;
}

AuditReport radial_involution(const Scenario& s, const PseudoCone& k, double tol) {
  const SearchOptions opts = search_for(s);
  const PseudoCone k_star = copolar(k, opts);
  const auto dirs = unit_directions(k.cone(), s.grid.directions, s.margin, s.seed);
  struct Row {
    double rho, rho_bidual;
  };
  const auto rows = map_samples<Row>(
      dirs.size(),
      [&](std::size_t i) {
        return Row{radial(k, dirs[i]), -1.0 / support_numeric(k_star, dirs[i], opts)};
      },
      s.exec);
  AuditBuilder b("involution", tol);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (!rows[i].value) {
      b.add_failure(dirs[i], rows[i].error, rows[i].kind);
      continue;
    }
    const Row& r = *rows[i].value;
    const double rel = relative_error(r.rho_bidual, r.rho);
    b.add(dirs[i], r.rho_bidual, r.rho, std::abs(r.rho_bidual - r.rho), rel, rel);
  }
  b.note("radial field of K** = -1 / h_{K*} (numerical supremum) against rho_K");
  return b.finish();
}

// Class-0 families: x in K** iff h_{K*}(x) <= -1. Points on both sides of the
// boundary; a disagreement is scored by how far h_{K*}(x) is from -1.
AuditReport membership_involution(const Scenario& s, const PseudoCone& k, double tol) {
  const SearchOptions opts = search_for(s);
  const PseudoCone k_star = copolar(k, opts);
  const int per_dir = 10;
  const auto dirs = unit_directions(k.cone(), std::max(1, s.grid.membership / per_dir), s.margin, s.seed);
  std::vector<Vec> points;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double rho = radial(k, dirs[i]);
    for (int j = 0; j < per_dir; ++j) {
      // Golden-ratio sequence of scales in [0.5, 1.5).
      const double frac = std::fmod(0.6180339887498949 * static_cast<double>(i * per_dir + j + 1), 1.0);
      points.push_back((0.5 + frac) * rho * dirs[i]);
    }
  }
  struct Row {
    bool in_k, in_bidual;
    double h;
  };
  const auto rows = map_samples<Row>(
      points.size(),
      [&](std::size_t i) {
        const double h = support_numeric(k_star, points[i], opts);
        return Row{member(k, points[i]), h <= -1.0, h};
      },
      s.exec);
  AuditBuilder b("involution", tol);
  int disagreements = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!rows[i].value) {
      b.add_failure(points[i], rows[i].error, rows[i].kind);
      continue;
    }
    const Row& r = *rows[i].value;
    const double e = r.in_k == r.in_bidual ? 0.0 : std::abs(r.h + 1.0);
    disagreements += r.in_k != r.in_bidual;
    b.add(points[i], r.in_bidual ? 1.0 : 0.0, r.in_k ? 1.0 : 0.0, e, e, e);
  }
  b.metric("membership_disagreements", disagreements);
  b.note("membership in K** (h_{K*}(x) <= -1) against membership in K");
  return b.finish();
}

AuditReport radial_support_duality(const Scenario& s, const PseudoCone& k, double tol) {
  const SearchOptions opts = search_for(s);
  const PseudoCone k_star = copolar(k, opts);
  const auto dirs = unit_directions(k.cone(), s.grid.directions, s.margin, s.seed);
  const auto rows = map_samples<double>(
      dirs.size(), [&](std::size_t i) { return radial(k, dirs[i]) * -support_numeric(k_star, dirs[i], opts); },
      s.exec);
  AuditBuilder b("eq1_1", tol);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (!rows[i].value) {
      b.add_failure(dirs[i], rows[i].error, rows[i].kind);
      continue;
    }
    const double e = std::abs(*rows[i].value - 1.0);
    b.add(dirs[i], *rows[i].value, 1.0, e, e, e);
  }
  return b.finish();
}

AuditReport equivariance(const Scenario& s, const PseudoCone& k, double tol) {
  const SearchOptions opts = search_for(s);
  const std::vector<Mat> mats = s.matrices.empty() ? default_matrices(k.cone()) : s.matrices;
  const PseudoCone k_star = copolar(k, opts);
  AuditBuilder b("equivariance", tol);
  for (std::size_t m = 0; m < mats.size(); ++m) {
    const Mat& a = mats[m];
    if (a.rows() != k.dim()) throw Error(ErrorKind::InvalidArgument, "equivariance matrix has wrong dimension");
    const PseudoCone image = linear_image(k, a);
    const PseudoCone rhs = linear_image(k_star, Mat(a.inverse().transpose()));
    const auto dirs = unit_directions(image.dual_cone(), s.grid.equivariance, s.margin, s.seed);
    struct Row {
      double lhs, rhs;
    };
    // Left side straight from the set definition: rho_{(AK)*} = -1 / h_{AK}.
    const auto rows = map_samples<Row>(
        dirs.size(),
        [&](std::size_t i) { return Row{-1.0 / support_numeric(image, dirs[i], opts), radial(rhs, dirs[i])}; },
        s.exec);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      if (!rows[i].value) {
        b.add_failure(dirs[i], "matrix " + std::to_string(m) + ": " + rows[i].error, rows[i].kind);
        continue;
      }
      Witness w;
      w.point = dirs[i];
      w.lhs = rows[i].value->lhs;
      w.rhs = rows[i].value->rhs;
      w.error = relative_error(w.lhs, w.rhs);
      w.note = "matrix " + std::to_string(m);
      const double abs_e = std::abs(w.lhs - w.rhs);
      const double rel_e = w.error;
      b.add(std::move(w), abs_e, rel_e);
    }
  }
  b.metric("matrices", static_cast<double>(mats.size()));
  return b.finish();
}

std::vector<AuditReport> affine_sphere_reports(const Scenario& s, const PseudoCone& k) {
  SampleSpec spec;
  spec.count = s.grid.pairs;
  spec.margin = s.margin;
  spec.exec = s.exec;
  spec.seed = s.seed;
  spec.search = search_for(s);
  const AffineSphereStats st = affine_sphere_statistic(k, spec);
  auto build = [&](const std::string& id, const std::vector<std::pair<Vec, double>>& vals, double mean) {
    AuditBuilder b(id, tolerance_for(s, k, id));
    for (const auto& [x, v] : vals) {
      const double e = std::abs(v - mean) / std::abs(mean);
      b.add(x, v, mean, std::abs(v - mean), e, e);
    }
    b.metric("mean_rho_aff", mean);
    return b.finish();
  };
  return {build("affine_sphere", st.values, st.mean), build("affine_sphere.copolar", st.values_star, st.mean_star)};
}

}  // namespace

double tolerance_for(const Scenario& s, const PseudoCone& k, const std::string& id) {
  double t = 1e-8;
  const bool exact = k.analytic();
  if (id == "involution") t = k.smoothness() >= 2 ? 1e-8 : 1e-6;
  else if (id == "eq1_1") t = 1e-9;
  else if (id == "eq3_2") t = exact ? 1e-7 : 1e-6;
  else if (id == "crucial_pairs.pairing") t = 1e-9;
  else if (id == "crucial_pairs.involution") t = 1e-7;
  else if (id == "crucial_pairs.hessian") t = exact ? 1e-8 : 1e-5;
  else if (id == "eq4_1") t = exact ? 1e-8 : 1e-4;
  else if (id == "affine_sphere" || id == "affine_sphere.copolar") t = 1e-5;
  else if (id == "eq5_1") t = exact ? 1e-8 : 1e-4;
  else if (id == "eq5_2") t = exact ? 1e-8 : 1e-3;
  if (auto it = s.tolerances.find(id); it != s.tolerances.end()) t = it->second;
  return t * s.tol_scale;
}

Expectation expectation_for(const Scenario& s, const std::string& id) {
  if (auto it = s.expect.find(id); it != s.expect.end()) return it->second;
  return id == "eq2_1n.sup" ? Expectation::any : Expectation::holds;
}

bool meets(const AuditReport& r, Expectation e) {
  switch (e) {
    case Expectation::holds: return r.verdict == Verdict::holds;
    case Expectation::fails: return r.verdict == Verdict::fails && !r.worst.empty();
    case Expectation::any: return true;
  }
  return false;
}

std::vector<Mat> default_matrices(const Cone& c) {
  const int n = c.dim();
  std::vector<Mat> out;
  auto rotation = [n](int i, int j, double t) {
    Mat r = Mat::Identity(n, n);
    r(i, i) = r(j, j) = std::cos(t);
    r(i, j) = -std::sin(t);
    r(j, i) = std::sin(t);
    return r;
  };
  if (c.kind() == ConeKind::circular) {
    // Circular cones only admit conformal images here.
    out.push_back(2.0 * Mat::Identity(n, n));
    out.push_back(rotation(0, 1, 0.3));
    out.push_back(1.7 * rotation(0, n - 1, -0.2));
    out.push_back(0.5 * rotation(1, n - 1, 0.4) * rotation(0, 1, 0.1));
    out.push_back(3.0 * rotation(0, 1, -0.25));
    return out;
  }
  Mat shear = Mat::Identity(n, n);
  shear(0, 0) = 2.0;
  shear(0, 1) = 1.0;
  out.push_back(shear);  // [[2, 1], [0, 1]] in the plane
  Mat diag = Mat::Identity(n, n);
  for (int i = 0; i < n; ++i) diag(i, i) = std::pow(2.0, 1 - i);
  out.push_back(diag);
  Mat band = Mat::Identity(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    band(i, i + 1) = 0.5;
    band(i + 1, i) = 0.3;
  }
  out.push_back(band);
  out.push_back(1.2 * Mat::Identity(n, n) + 0.25 * (Mat::Ones(n, n) - Mat::Identity(n, n)));
  out.push_back(1.7 * rotation(0, 1, 0.3));
  return out;
}

AuditOutcome run_audit(const Scenario& s, const PseudoCone& k, const std::string& audit) {
  AuditOutcome out;
  out.audit = audit;
  try {
    const SearchOptions opts = search_for(s);
    SampleSpec spec;
    spec.margin = s.margin;
    spec.exec = s.exec;
    spec.seed = s.seed;
    spec.search = opts;
    if (audit == "involution") {
      const double tol = tolerance_for(s, k, "involution");
      out.reports.push_back(k.smoothness() >= 2 ? radial_involution(s, k, tol) : membership_involution(s, k, tol));
    } else if (audit == "eq1_1") {
      out.reports.push_back(radial_support_duality(s, k, tolerance_for(s, k, "eq1_1")));
    } else if (audit == "eq2_1n") {
      LegendreGrid g;
      g.count = s.grid.legendre;
      g.margin = s.margin;
      g.saddle_tolerance = tolerance_for(s, k, "eq2_1n.saddle");
      g.sup_tolerance = tolerance_for(s, k, "eq2_1n.sup");
      g.search = opts;
      g.exec = s.exec;
      g.seed = s.seed;
      LegendreAudit a = audit_legendre(k, g);
      out.reports.push_back(std::move(a.saddle));
      out.reports.push_back(std::move(a.sup));
    } else if (audit == "eq3_2") {
      spec.count = s.grid.points;
      spec.tolerance = tolerance_for(s, k, "eq3_2");
      out.reports.push_back(check_gauge_equality(k, spec));
    } else if (audit == "crucial_pairs") {
      spec.count = s.grid.boundary;
      CrucialTolerances tol{tolerance_for(s, k, "crucial_pairs.pairing"),
                            tolerance_for(s, k, "crucial_pairs.involution"),
                            tolerance_for(s, k, "crucial_pairs.hessian")};
      CrucialAudit a = check_crucial_pairs(k, spec, tol);
      out.reports = {std::move(a.pairing), std::move(a.involution), std::move(a.hessian)};
    } else if (audit == "eq4_1") {
      spec.count = s.grid.pairs;
      spec.tolerance = tolerance_for(s, k, "eq4_1");
      ProductAudit a = check_product_identity(k, spec);
      out.reports.push_back(std::move(a.report));
      out.rows = std::move(a.rows);
    } else if (audit == "affine_sphere") {
      out.reports = affine_sphere_reports(s, k);
    } else if (audit == "eq5_1" || audit == "eq5_2") {
      TensorSpec t;
      t.count = s.grid.tensors;
      t.margin = s.margin;
      t.metric_tolerance = tolerance_for(s, k, "eq5_1");
      t.cubic_tolerance = tolerance_for(s, k, "eq5_2");
      t.exec = s.exec;
      t.seed = s.seed;
      t.search = opts;
      if (s.tensor_chart == "exponential") {
        if (k.dim() != 2) throw Error(ErrorKind::InvalidArgument, "the exponential chart needs n = 2");
        t.chart = exponential_directions();
      }
      TensorAudit a = check_tensor_identities(k, t);
      out.reports.push_back(audit == "eq5_1" ? std::move(a.metric) : std::move(a.cubic));
    } else if (audit == "equivariance") {
      out.reports.push_back(equivariance(s, k, tolerance_for(s, k, "equivariance")));
    } else {
      throw Error(ErrorKind::UnknownAudit, "unknown audit id '" + audit + "'");
    }
  } catch (const Error& e) {
    out.reports.clear();
    out.error = e.what();
    out.error_kind = e.kind();
  } catch (const std::exception& e) {
    out.reports.clear();
    out.error = e.what();
  }
  // Samples that could not be evaluated make the audit a numeric failure, not
  // a verdict.
  for (const AuditReport& r : out.reports) {
    if (r.failed_samples == 0 || out.error) continue;
    out.error = r.id + ": " + std::to_string(r.failed_samples) + " of " + std::to_string(r.samples) +
                " samples could not be evaluated; first: " + r.first_failure;
    out.error_kind = r.failure_kind;
  }
  for (const AuditReport& r : out.reports) {
    const Expectation e = expectation_for(s, r.id);
    out.expected.push_back(e);
    out.met.push_back(meets(r, e));
  }
  return out;
}

int exit_status(const std::vector<AuditOutcome>& outcomes) {
  bool unmet = false;
  for (const AuditOutcome& o : outcomes) {
    if (o.error) return 4;
    for (bool m : o.met) unmet = unmet || !m;
  }
  return unmet ? 3 : 0;
}

RunReport run_scenario(const Scenario& s) {
  RunReport out;
  out.scenario = s;
  const PseudoCone k = scenario_family(s);
  for (const std::string& id : s.audits) out.audits.push_back(run_audit(s, k, id));
  out.exit_status = exit_status(out.audits);
  return out;
}

}  // namespace copolar
