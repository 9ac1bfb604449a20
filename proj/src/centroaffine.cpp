#include "copolar/centroaffine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "copolar/error.hpp"

namespace copolar {
namespace {

double pair(const JetVec& a, const JetVec& b, auto da, auto db) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += da(a[i]) * db(b[i]);
  return s;
}

}  // namespace

Tensor3 christoffel_from_metric(const Mat& G, const Tensor3& dG) {
  const int m = static_cast<int>(G.rows());
  if (std::abs(G.determinant()) < defaults::kDegenerateDet) {
    throw Error(ErrorKind::Degenerate, "centro-affine metric is degenerate");
  }
  const Mat inv = G.inverse();
  Tensor3 gamma(m);
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double s = 0.0;
        for (int d = 0; d < m; ++d) s += inv(c, d) * (dG(d, b, a) + dG(d, a, b) - dG(a, b, d));
        gamma(c, a, b) = 0.5 * s;
      }
  return gamma;
}

CentroAffineFrame centroaffine_frame(const BoundaryChart& chart, const Vec& p) {
  const PseudoCone& k = chart.pseudo_cone();
  if (k.smoothness() < 3) throw Error(ErrorKind::Unsupported, k.name() + " is not C^3");
  if (chart.dim() > 3 && !chart.analytic()) {
    throw Error(ErrorKind::Unsupported, "centro-affine tensors for n > 3 need analytic derivatives");
  }
  const int m = chart.params();
  const std::size_t n = static_cast<std::size_t>(chart.dim());
  CentroAffineFrame f;
  f.p = p;
  f.x = chart.surface(p, 3);
  f.x_star = copolar_surface(f.x);

  // G_ab as first-order jets: <X*, X_ab>.
  std::vector<Jet> g_jets(static_cast<std::size_t>(m * m));
  f.G = Mat(m, m);
  f.dG = Tensor3(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Jet s = f.x_star[0] * f.x[0].partial(a).partial(b);
      for (std::size_t i = 1; i < n; ++i) s += f.x_star[i] * f.x[i].partial(a).partial(b);
      f.G(a, b) = s.value();
      for (int c = 0; c < m; ++c) f.dG(a, b, c) = s.d(c);
      const double other = -pair(f.x_star, f.x, [&](const Jet& j) { return j.d(a); }, [&](const Jet& j) { return j.d(b); });
      f.metric_form_gap = std::max(f.metric_form_gap, std::abs(f.G(a, b) - other));
    }
  f.gamma = christoffel_from_metric(f.G, f.dG);
  f.G_inv = f.G.inverse();

  // X_a||b = X_ab - Gamma^d_ab X_d, then A_abc = -<X*_c, X_a||b>.
  f.A = Tensor3(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Vec cov(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        double v = f.x[i].d2(a, b);
        for (int d = 0; d < m; ++d) v -= f.gamma(d, a, b) * f.x[i].d(d);
        cov[static_cast<Eigen::Index>(i)] = v;
      }
      for (int c = 0; c < m; ++c) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s -= f.x_star[i].d(c) * cov[static_cast<Eigen::Index>(i)];
        f.A(a, b, c) = s;
      }
    }
  f.cubic_asymmetry = f.A.asymmetry();
  const double budget = chart.budget();
  if (f.cubic_asymmetry > 10.0 * budget * std::max(1.0, f.A.max_abs())) {
    throw Error(ErrorKind::NoiseBudgetExceeded, "cubic form asymmetry " + std::to_string(f.cubic_asymmetry));
  }
  f.A.symmetrize();

  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        double r = f.dG(a, b, c);
        for (int d = 0; d < m; ++d) r -= f.gamma(d, c, a) * f.G(d, b) + f.gamma(d, c, b) * f.G(a, d);
        f.ricci_gap = std::max(f.ricci_gap, std::abs(r));
      }

  if (chart.analytic()) {
    Tensor3 direct(m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          double s = 0.0;
          for (std::size_t i = 0; i < n; ++i) s += f.x_star[i].value() * f.x[i].d3(a, b, c);
          for (int d = 0; d < m; ++d) {
            s -= f.gamma(d, a, b) * f.G(d, c) + f.gamma(d, c, a) * f.G(d, b) + f.gamma(d, c, b) * f.G(a, d);
          }
          direct(a, b, c) = s;
        }
    f.A_direct = direct;
  }
  return f;
}

Mat ca_metric(const BoundaryChart& chart, const Vec& p) { return centroaffine_frame(chart, p).G; }
Tensor3 christoffel(const BoundaryChart& chart, const Vec& p) { return centroaffine_frame(chart, p).gamma; }
Tensor3 cubic_form(const BoundaryChart& chart, const Vec& p) { return centroaffine_frame(chart, p).A; }

Mat pull_back(const Mat& t, const Mat& J) { return J.transpose() * t * J; }

Tensor3 pull_back(const Tensor3& t, const Mat& J) {
  const int src = static_cast<int>(J.cols());
  const int dst = t.size();
  Tensor3 out(src);
  for (int a = 0; a < src; ++a)
    for (int b = 0; b < src; ++b)
      for (int c = 0; c < src; ++c) {
        double s = 0.0;
        for (int i = 0; i < dst; ++i)
          for (int j = 0; j < dst; ++j)
            for (int l = 0; l < dst; ++l) s += t(i, j, l) * J(i, a) * J(j, b) * J(l, c);
        out(a, b, c) = s;
      }
  return out;
}

TensorAudit check_tensor_identities(const PseudoCone& k, const TensorSpec& spec) {
  const PseudoCone k_star = copolar(k, spec.search);
  const BoundaryChart chart = spec.chart ? BoundaryChart(k, *spec.chart) : BoundaryChart::footprint(k, spec.margin);
  const BoundaryChart chart_star = BoundaryChart::footprint(k_star, 0.0);
  const std::vector<Vec> params = chart.sample(spec.count, spec.seed);
  const int m = chart.params();

  struct Row {
    CentroAffineFrame f, f_star;
    Mat G_bar;
    Tensor3 A_bar;
  };
  const auto rows = map_samples<Row>(
      params.size(),
      [&](std::size_t i) {
        Row r;
        r.f = centroaffine_frame(chart, params[i]);
        const JetVec q = chart_star.directions().to_params_jet(r.f.x_star);
        Vec q0(m);
        Mat J(m, m);
        for (int a = 0; a < m; ++a) {
          q0[a] = q[a].value();
          for (int b = 0; b < m; ++b) J(a, b) = q[a].d(b);
        }
        r.f_star = centroaffine_frame(chart_star, q0);
        r.G_bar = pull_back(r.f_star.G, J);
        r.A_bar = pull_back(r.f_star.A, J);
        return r;
      },
      spec.exec);

  AuditBuilder metric("eq5_1", spec.metric_tolerance);
  AuditBuilder cubic("eq5_2", spec.cubic_tolerance);
  double max_a = 0.0, form_gap = 0.0, asym = 0.0, ricci = 0.0, direct = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!rows[i].value) {
      metric.add_failure(params[i], rows[i].error, rows[i].kind);
      cubic.add_failure(params[i], rows[i].error, rows[i].kind);
      continue;
    }
    const Row& r = *rows[i].value;
    const double eg = (r.f.G - r.G_bar).cwiseAbs().maxCoeff();
    const double scale_g = r.f.G.cwiseAbs().maxCoeff();
    metric.add(params[i], r.f.G(0, 0), r.G_bar(0, 0), eg, eg / std::max(scale_g, 1.0), eg);
    double ea = 0.0;
    for (std::size_t j = 0; j < r.f.A.data().size(); ++j) ea = std::max(ea, std::abs(r.f.A.data()[j] + r.A_bar.data()[j]));
    const double scale_a = r.f.A.max_abs();
    cubic.add(params[i], r.f.A(0, 0, 0), -r.A_bar(0, 0, 0), ea, ea / std::max(scale_a, 1.0), ea);
    max_a = std::max(max_a, scale_a);
    form_gap = std::max({form_gap, r.f.metric_form_gap, r.f_star.metric_form_gap});
    asym = std::max({asym, r.f.cubic_asymmetry, r.f_star.cubic_asymmetry});
    ricci = std::max({ricci, r.f.ricci_gap, r.f_star.ricci_gap});
    if (r.f.A_direct) {
      for (std::size_t j = 0; j < r.f.A.data().size(); ++j) {
        direct = std::max(direct, std::abs(r.f.A.data()[j] - r.f.A_direct->data()[j]));
      }
    }
  }
  metric.metric("max_metric_form_gap", form_gap);
  metric.metric("max_ricci_gap", ricci);
  cubic.metric("max_abs_cubic_form", max_a);
  cubic.metric("max_cubic_asymmetry", asym);
  cubic.metric("max_direct_form_gap", direct);
  return {metric.finish(), cubic.finish()};
}

}  // namespace copolar
