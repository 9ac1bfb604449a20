#include "copolar/diffgeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "copolar/duality.hpp"
#include "copolar/error.hpp"

namespace copolar {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Jet jet_det(const std::vector<JetVec>& cols, const std::vector<int>& rows) {
  const std::size_t m = cols.size();
  if (m == 1) return cols[0][rows[0]];
  Jet acc = Jet::constant(cols[0][0].vars(), 0.0, cols[0][0].order());
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<int> minor_rows;
    for (std::size_t q = 0; q < m; ++q)
      if (q != r) minor_rows.push_back(rows[q]);
    const std::vector<JetVec> rest(cols.begin() + 1, cols.end());
    const Jet term = cols[0][rows[r]] * jet_det(rest, minor_rows);
    if (r % 2 == 0) acc += term;
    else acc -= term;
  }
  return acc;
}

Vec values(const JetVec& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].value();
  return out;
}

Mat first_derivatives(const JetVec& v) {
  const int m = v.front().vars();
  Mat out(static_cast<Eigen::Index>(v.size()), m);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (int a = 0; a < m; ++a) out(static_cast<Eigen::Index>(i), a) = v[i].d(a);
  return out;
}

Jet jet_dot(const JetVec& a, const JetVec& b) { return dot(std::span(a), std::span(b)); }

JetVec unit_jets(const JetVec& v) {
  const Jet inv = 1.0 / sqrt(jet_dot(v, v));
  JetVec out;
  for (const Jet& c : v) out.push_back(c * inv);
  return out;
}

double det_with_lead(const Vec& lead, const Mat& cols) {
  Mat m(lead.size(), cols.cols() + 1);
  m.col(0) = lead;
  m.rightCols(cols.cols()) = cols;
  return m.determinant();
}

// Determinant-ratio curvature |det(N, N_a) / det(N, X_a)| with N the unit
// normal field along the surface jets.
double determinant_curvature(const JetVec& x, const JetVec& unit_normal) {
  const Vec n = values(unit_normal);
  return std::abs(det_with_lead(n, first_derivatives(unit_normal)) / det_with_lead(n, first_derivatives(x)));
}

JetVec jets_at(const Vec& p, int order) {
  JetVec out;
  for (Eigen::Index a = 0; a < p.size(); ++a) out.push_back(Jet::variable(static_cast<int>(p.size()), static_cast<int>(a), p[a], order));
  return out;
}

void require_smooth(const PseudoCone& k, int at_least) {
  if (k.smoothness() < at_least) {
    throw Error(ErrorKind::Unsupported, k.name() + " is not smooth enough for this operation");
  }
}

template <class R>
void rethrow_first_failure(const std::vector<SampleOutcome<R>>& rows) {
  for (const auto& r : rows) {
    if (r.value) continue;
    throw Error(r.kind.value_or(ErrorKind::Degenerate), r.error);
  }
}

double max_abs_diff(const Vec& a, const Vec& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

// ---------------------------------------------------------------------------
// Direction maps

DirectionMap gnomonic_directions(const GnomonicChart& chart) {
  DirectionMap d;
  d.name = "gnomonic";
  d.params = chart.params();
  d.dim = chart.ambient_dim();
  d.at = [chart](const Vec& p) { return chart.ambient(p); };
  d.jet = [chart](const Vec& p, int order) { return chart.ambient_jet(p, order); };
  d.contains = [chart](const Vec& p) { return chart.contains(p); };
  d.to_params = [chart](const Vec& v) { return chart.to_params(v); };
  d.to_params_jet = [chart](const JetVec& v) { return chart.to_params_jet(v); };
  d.sample = [chart](int count, std::uint64_t seed) { return chart.sample(count, seed); };
  return d;
}

DirectionMap exponential_directions(double sample_range) {
  DirectionMap d;
  d.name = "exponential";
  d.params = 1;
  d.dim = 2;
  d.at = [](const Vec& p) {
    Vec w(2);
    w << std::exp(p[0]), std::exp(-p[0]);
    return w;
  };
  d.jet = [](const Vec& p, int order) {
    const Jet t = Jet::variable(1, 0, p[0], order);
    return JetVec{exp(t), exp(-t)};
  };
  d.contains = [](const Vec& p) { return p.size() == 1 && std::isfinite(p[0]); };
  d.to_params = [](const Vec& v) {
    if (!(v[0] > 0.0 && v[1] > 0.0)) throw Error(ErrorKind::OutsideCone, "direction is not in the open quadrant");
    Vec p(1);
    p << 0.5 * std::log(v[0] / v[1]);
    return p;
  };
  d.to_params_jet = [](const JetVec& v) { return JetVec{0.5 * log(v[0] / v[1])}; };
  d.sample = [sample_range](int count, std::uint64_t) {
    std::vector<Vec> out;
    for (int i = 0; i < count; ++i) {
      Vec p(1);
      p << (count == 1 ? 0.0 : sample_range * (2.0 * i / (count - 1) - 1.0));
      out.push_back(p);
    }
    return out;
  };
  return d;
}

DirectionMap rescaled(DirectionMap inner, double s) {
  if (!(s != 0.0 && std::isfinite(s))) throw Error(ErrorKind::InvalidArgument, "rescaling factor must be nonzero");
  DirectionMap d = inner;
  d.name = inner.name + "*" + std::to_string(s);
  d.at = [inner, s](const Vec& p) { return inner.at(s * p); };
  d.jet = [inner, s](const Vec& p, int order) {
    JetVec w = inner.jet(s * p, order);
    for (Jet& c : w) c = c.scale_variables(s);
    return w;
  };
  d.contains = [inner, s](const Vec& p) { return inner.contains(s * p); };
  d.to_params = [inner, s](const Vec& v) { return Vec(inner.to_params(v) / s); };
  d.to_params_jet = [inner, s](const JetVec& v) {
    JetVec q = inner.to_params_jet(v);
    for (Jet& c : q) c /= s;
    return q;
  };
  d.sample = [inner, s](int count, std::uint64_t seed) {
    std::vector<Vec> pts = inner.sample(count, seed);
    for (Vec& p : pts) p /= s;
    return pts;
  };
  return d;
}

// ---------------------------------------------------------------------------
// Boundary charts

BoundaryChart::BoundaryChart(PseudoCone k, DirectionMap dirs) : k_(std::move(k)), dirs_(std::move(dirs)) {
  if (dirs_.dim != k_.dim()) throw Error(ErrorKind::InvalidArgument, "chart dimension does not match the pseudo-cone");
  if (dirs_.params != dirs_.dim - 1) throw Error(ErrorKind::InvalidArgument, "chart must have n - 1 parameters");
}

BoundaryChart BoundaryChart::footprint(const PseudoCone& k, double margin) {
  return BoundaryChart(k, gnomonic_directions(footprint_chart(k.cone(), margin)));
}

Vec BoundaryChart::point(const Vec& p) const {
  const Vec w = dirs_.at(p);
  return k_.model().radial(w) * w;
}

JetVec BoundaryChart::surface(const Vec& p, int order) const {
  if (order < 0 || order > kMaxJetOrder) throw Error(ErrorKind::InvalidArgument, "chart order must be in [0, 3]");
  const JetVec w = dirs_.jet(p, order);
  Jet r;
  if (analytic()) {
    r = k_.model().radial_jet(w);
  } else {
    const auto& model = k_.model();
    const auto& at = dirs_.at;
    const ScalarField f = [&](const Vec& q) { return model.radial(at(q)); };
    const int m = params();
    const double value = f(p);
    Vec grad = Vec::Zero(m);
    Mat hess = Mat::Zero(m, m);
    std::vector<double> third(static_cast<std::size_t>(m) * m * m, 0.0);
    if (order >= 1) grad = grad_fd(f, p, {.order = 1});
    if (order >= 2) hess = hess_fd(f, p, {.order = 2});
    if (order >= 3) third = third_fd(f, p, {.order = 3}).data();
    // Row-major flattening; hess is symmetric so storage order is moot.
    std::vector<double> h(hess.data(), hess.data() + hess.size());
    r = Jet::from_derivatives(m, order, value, std::span<const double>(grad.data(), grad.size()), h, third);
  }
  JetVec x;
  for (const Jet& wi : w) x.push_back(r * wi);
  return x;
}

JetVec cofactor_normal(const JetVec& x) {
  const int n = static_cast<int>(x.size());
  const int m = x.front().vars();
  if (m != n - 1) throw Error(ErrorKind::InvalidArgument, "cofactor normal needs a hypersurface chart");
  std::vector<JetVec> tangents(m);
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i) tangents[a].push_back(x[i].partial(a));
  JetVec normal;
  for (int i = 0; i < n; ++i) {
    std::vector<int> rows;
    for (int r = 0; r < n; ++r)
      if (r != i) rows.push_back(r);
    Jet c = jet_det(tangents, rows);
    normal.push_back(i % 2 == 0 ? c : -c);
  }
  double along = 0.0;
  for (int i = 0; i < n; ++i) along += normal[i].value() * x[i].value();
  if (along > 0.0)
    for (Jet& c : normal) c = -c;
  return normal;
}

JetVec copolar_surface(const JetVec& x) {
  const JetVec normal = cofactor_normal(x);
  JetVec x_lower;  // X truncated to the normal's order
  for (const Jet& c : x) {
    Jet t = c;
    t *= Jet::constant(c.vars(), 1.0, normal.front().order());
    x_lower.push_back(t);
  }
  const Jet scale = -1.0 / jet_dot(x_lower, normal);
  JetVec out;
  for (const Jet& c : normal) out.push_back(c * scale);
  return out;
}

Vec outer_normal(const BoundaryChart& chart, const Vec& p) {
  require_smooth(chart.pseudo_cone(), 2);
  const JetVec x = chart.surface(p, 1);
  const Mat tangents = first_derivatives(x);
  Vec n = null_vector(tangents.transpose(), defaults::kDegenerateDet);
  if (n.dot(values(x)) > 0.0) n = -n;
  return n;
}

CurvatureSample curvature_sample(const BoundaryChart& chart, const Vec& p) {
  require_smooth(chart.pseudo_cone(), 2);
  const JetVec x = chart.surface(p, 2);
  const int m = chart.params();
  CurvatureSample s;
  s.p = p;
  s.x = values(x);
  const Mat tangents = first_derivatives(x);
  s.normal = null_vector(tangents.transpose(), defaults::kDegenerateDet);
  if (s.normal.dot(s.x) > 0.0) s.normal = -s.normal;
  s.g = tangents.transpose() * tangents;
  s.b = Mat(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      double v = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) v -= s.normal[static_cast<Eigen::Index>(i)] * x[i].d2(a, b);
      s.b(a, b) = v;
    }
  }
  const double det_g = s.g.determinant();
  if (!(det_g > defaults::kDegenerateDet)) throw Error(ErrorKind::RankDeficient, "chart is not regular");
  s.kappa = s.b.determinant() / det_g;
  s.kappa_det = determinant_curvature(x, unit_jets(cofactor_normal(x)));
  const double gap = relative_error(s.kappa_det, s.kappa, 1e-300);
  if (gap > 10.0 * chart.budget()) {
    throw Error(ErrorKind::NoiseBudgetExceeded, "curvature forms disagree by " + std::to_string(gap));
  }
  if (s.kappa > 0.0) {
    const double n = static_cast<double>(chart.dim());
    s.rho_aff = s.x.dot(s.normal) / std::pow(s.kappa, 1.0 / (n + 1.0));
  } else {
    s.rho_aff = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

double gauss_curvature(const BoundaryChart& chart, const Vec& p) { return curvature_sample(chart, p).kappa; }

double equiaffine_support(const BoundaryChart& chart, const Vec& p) {
  const CurvatureSample s = curvature_sample(chart, p);
  if (!(s.kappa > 0.0)) {
    throw Error(ErrorKind::Degenerate, "non-positive Gauss curvature " + std::to_string(s.kappa));
  }
  return s.rho_aff;
}

// ---------------------------------------------------------------------------
// Crucial pairs

Vec half_gauge_sq_gradient(const PseudoCone& k, const Vec& x) {
  if (!interior_contains(k.cone(), x)) throw Error(ErrorKind::OutsideCone, "point is not in int C");
  if (k.analytic()) {
    const Jet r = k.model().radial_jet(jets_at(x, 1));
    const Jet half = 0.5 / (r * r);
    Vec g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = half.d(static_cast<int>(i));
    return g;
  }
  const auto& model = k.model();
  return grad_fd([&](const Vec& y) {
    const double r = model.radial(y);
    return 0.5 / (r * r);
  }, x);
}

Mat half_gauge_sq_hessian(const PseudoCone& k, const Vec& x) {
  if (!interior_contains(k.cone(), x)) throw Error(ErrorKind::OutsideCone, "point is not in int C");
  if (k.analytic()) {
    const Jet r = k.model().radial_jet(jets_at(x, 2));
    const Jet half = 0.5 / (r * r);
    const auto n = x.size();
    Mat h(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) h(i, j) = half.d2(static_cast<int>(i), static_cast<int>(j));
    return h;
  }
  const auto& model = k.model();
  return hess_fd([&](const Vec& y) {
    const double r = model.radial(y);
    return 0.5 / (r * r);
  }, x);
}

Vec crucial_image(const PseudoCone& k, const Vec& x) { return -half_gauge_sq_gradient(k, x); }

CrucialPair crucial_map(const PseudoCone& k, const Vec& x) {
  require_smooth(k, 2);
  const double f = gauge(k, x);
  if (!(std::abs(f - 1.0) <= 1e-8)) {
    throw Error(ErrorKind::NotOnBoundary, "gauge is " + std::to_string(f) + ", not 1");
  }
  CrucialPair out;
  out.x = x;
  out.x_star = crucial_image(k, x);
  out.pairing = x.dot(out.x_star);
  return out;
}

Vec crucial_map_hessian(const PseudoCone& k, const Vec& x) {
  require_smooth(k, 2);
  const double f = gauge(k, x);
  if (!(std::abs(f - 1.0) <= 1e-8)) {
    throw Error(ErrorKind::NotOnBoundary, "gauge is " + std::to_string(f) + ", not 1");
  }
  return -(half_gauge_sq_hessian(k, x) * x);
}

AuditReport check_gauge_equality(const PseudoCone& k, const SampleSpec& spec) {
  require_smooth(k, 2);
  const PseudoCone k_star = copolar(k, spec.search);
  const std::vector<Vec> points = shell_grid(k.cone(), spec.count, {1.0, 3.0}, spec.margin, spec.seed);
  struct Row {
    double f, h;
  };
  const auto rows = map_samples<Row>(
      points.size(),
      [&](std::size_t i) {
        const Vec& x = points[i];
        return Row{gauge(k, x), gauge(k_star, crucial_image(k, x))};
      },
      spec.exec);
  AuditBuilder out("eq3_2", spec.tolerance);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!rows[i].value) {
      out.add_failure(points[i], rows[i].error, rows[i].kind);
      continue;
    }
    const Row& r = *rows[i].value;
    const double e = std::abs(r.f - r.h);
    out.add(points[i], r.f, r.h, e, relative_error(r.h, r.f), e);
  }
  return out.finish();
}

CrucialAudit check_crucial_pairs(const PseudoCone& k, const SampleSpec& spec, CrucialTolerances tol) {
  require_smooth(k, 2);
  if (tol.hessian <= 0.0) tol.hessian = k.analytic() ? 1e-8 : 1e-5;
  const PseudoCone k_star = copolar(k, spec.search);
  const BoundaryChart chart = BoundaryChart::footprint(k, spec.margin);
  const std::vector<Vec> params = chart.sample(spec.count, spec.seed);
  struct Row {
    Vec x, x_star, back, hess;
    double pairing, h_star;
  };
  const auto rows = map_samples<Row>(
      params.size(),
      [&](std::size_t i) {
        const Vec x = chart.point(params[i]);
        const CrucialPair pair = crucial_map(k, x);
        return Row{x,
                   pair.x_star,
                   crucial_image(k_star, pair.x_star),
                   crucial_map_hessian(k, x),
                   pair.pairing,
                   gauge(k_star, pair.x_star)};
      },
      spec.exec);
  AuditBuilder pairing("crucial_pairs.pairing", tol.pairing);
  AuditBuilder involution("crucial_pairs.involution", tol.involution);
  AuditBuilder hessian("crucial_pairs.hessian", tol.hessian);
  double h_gap = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!rows[i].value) {
      const Vec x = chart.point(params[i]);
      pairing.add_failure(x, rows[i].error, rows[i].kind);
      involution.add_failure(x, rows[i].error, rows[i].kind);
      hessian.add_failure(x, rows[i].error, rows[i].kind);
      continue;
    }
    const Row& r = *rows[i].value;
    const double ep = std::abs(r.pairing + 1.0);
    pairing.add(r.x, r.pairing, -1.0, ep, ep, ep);
    const double ei = max_abs_diff(r.back, r.x);
    involution.add(r.x, r.back.norm(), r.x.norm(), ei, ei / r.x.norm(), ei);
    const double eh = max_abs_diff(r.hess, r.x_star);
    hessian.add(r.x, r.hess.norm(), r.x_star.norm(), eh, eh / r.x_star.norm(), eh);
    h_gap = std::max(h_gap, std::abs(r.h_star - 1.0));
  }
  pairing.metric("max_copolar_gauge_gap", h_gap);
  return {pairing.finish(), involution.finish(), hessian.finish()};
}

// ---------------------------------------------------------------------------
// Equiaffine product identity

double copolar_equiaffine_support(const PseudoCone& k_star, const Vec& x_star) {
  const BoundaryChart chart = BoundaryChart::footprint(k_star, 0.0);
  return equiaffine_support(chart, chart.to_params(x_star));
}

ProductAudit check_product_identity(const PseudoCone& k, const SampleSpec& spec) {
  require_smooth(k, 2);
  const PseudoCone k_star = copolar(k, spec.search);
  require_smooth(k_star, 2);
  const BoundaryChart chart = BoundaryChart::footprint(k, spec.margin);
  const BoundaryChart chart_star = BoundaryChart::footprint(k_star, 0.0);
  const std::vector<Vec> params = chart.sample(spec.count, spec.seed);
  const int n = k.dim();

  struct Row {
    CurvatureSample s, s_star;
    CrucialPair pair;
    double correspondence_gap, shared_kappa_gap, det_identity_gap;
  };
  const auto rows = map_samples<Row>(
      params.size(),
      [&](std::size_t i) {
        Row r;
        r.s = curvature_sample(chart, params[i]);
        if (!(r.s.kappa > 0.0)) throw Error(ErrorKind::Degenerate, "non-positive Gauss curvature");
        r.pair = crucial_map(k, r.s.x);
        r.s_star = curvature_sample(chart_star, chart_star.to_params(r.pair.x_star));
        if (!(r.s_star.kappa > 0.0)) throw Error(ErrorKind::Degenerate, "non-positive Gauss curvature of K*");

        // Shared-parameter picture: X* = N / (-<X, N>), N* = X / |X|.
        const JetVec x = chart.surface(params[i], 2);
        const JetVec x_star = copolar_surface(x);
        const JetVec n_star = unit_jets(x);
        const JetVec n_k = unit_jets(cofactor_normal(x));
        const double len = r.s.x.norm();
        r.correspondence_gap = std::max({max_abs_diff(values(x_star), r.pair.x_star),
                                         max_abs_diff(r.s_star.normal, r.s.x / len),
                                         std::abs(len - 1.0 / -values(x_star).dot(r.s_star.normal))});
        r.shared_kappa_gap = relative_error(determinant_curvature(x_star, n_star), r.s_star.kappa);
        const Vec nv = values(n_star);
        const double lhs = det_with_lead(nv, first_derivatives(n_star));
        const double rhs = std::pow(len, -n) * r.s.x.dot(values(n_k)) *
                           det_with_lead(values(n_k), first_derivatives(x));
        // Orientation of the two frames is arbitrary; compare magnitudes.
        r.det_identity_gap = relative_error(std::abs(lhs), std::abs(rhs));
        return r;
      },
      spec.exec);

  ProductAudit out;
  AuditBuilder report("eq4_1", spec.tolerance);
  double corr = 0.0, shared = 0.0, det_gap = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    CurvatureRow row;
    row.family = k.name();
    row.n = n;
    row.chart_u = params[i];
    if (!rows[i].value) {
      row.x = chart.point(params[i]);
      row.kappa = row.rho_aff = row.pair_product = std::numeric_limits<double>::quiet_NaN();
      report.add_failure(row.x, rows[i].error, rows[i].kind);
      out.rows.push_back(std::move(row));
      continue;
    }
    const Row& r = *rows[i].value;
    const double product = r.s.rho_aff * r.s_star.rho_aff;
    row.x = r.s.x;
    row.kappa = r.s.kappa;
    row.rho_aff = r.s.rho_aff;
    row.pair_product = product;
    out.rows.push_back(row);
    Witness w;
    w.point = r.s.x;
    w.lhs = product;
    w.rhs = 1.0;
    w.error = std::abs(product - 1.0);
    report.add(std::move(w), std::abs(product - 1.0), std::abs(product - 1.0));
    corr = std::max(corr, r.correspondence_gap);
    shared = std::max(shared, r.shared_kappa_gap);
    det_gap = std::max(det_gap, r.det_identity_gap);
  }
  report.metric("max_correspondence_gap", corr);
  report.metric("max_shared_parameter_kappa_gap", shared);
  report.metric("max_determinant_identity_gap", det_gap);
  out.report = report.finish();
  return out;
}

AffineSphereStats affine_sphere_statistic(const PseudoCone& k, const SampleSpec& spec) {
  require_smooth(k, 2);
  const PseudoCone k_star = copolar(k, spec.search);
  auto collect = [&](const PseudoCone& set, double& mean, double& dev, std::vector<std::pair<Vec, double>>& vals) {
    const BoundaryChart chart = BoundaryChart::footprint(set, spec.margin);
    const std::vector<Vec> params = chart.sample(spec.count, spec.seed);
    const auto rows = map_samples<double>(
        params.size(), [&](std::size_t i) { return equiaffine_support(chart, params[i]); }, spec.exec);
    rethrow_first_failure(rows);
    mean = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      vals.emplace_back(chart.point(params[i]), *rows[i].value);
      mean += *rows[i].value;
    }
    mean /= static_cast<double>(rows.size());
    dev = 0.0;
    for (const auto& r : rows) dev = std::max(dev, std::abs(*r.value - mean) / std::abs(mean));
    return rows.size();
  };
  AffineSphereStats out;
  out.samples = collect(k, out.mean, out.max_rel_deviation, out.values);
  out.samples += collect(k_star, out.mean_star, out.max_rel_deviation_star, out.values_star);
  return out;
}

}  // namespace copolar
