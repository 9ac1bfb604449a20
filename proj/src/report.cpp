#include "copolar/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "copolar/error.hpp"

namespace copolar {
namespace {

using nlohmann::json;

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json vec(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

json mat(const Mat& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i).transpose()));
  return a;
}

json family_json(const FamilySpec& f) {
  json j{{"name", f.family}};
  if (f.family == "hyperbola") j["c"] = f.c;
  if (f.family == "calabi") {
    j["c"] = f.c;
    j["n"] = f.n;
  }
  if (f.family == "perturbed_hyperbola") j["delta"] = f.delta;
  if (f.family == "truncated_cone") {
    j["height"] = f.height;
    if (f.normal.size() > 0) j["normal"] = vec(f.normal);
  }
  if (f.family == "shifted_cone") j["apex"] = vec(f.apex);
  if (f.cone) {
    json c{{"kind", f.cone->kind}, {"n", f.cone->n}};
    if (f.cone->kind == "circular") {
      c["axis"] = vec(f.cone->axis);
      c["half_angle"] = f.cone->half_angle;
    }
    if (f.cone->kind == "polyhedral") {
      json g = json::array();
      for (const Vec& v : f.cone->generators) g.push_back(vec(v));
      c["generators"] = g;
    }
    j["cone"] = c;
  }
  return j;
}

json scenario_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["family"] = family_json(s.family);
  if (s.linear_map) j["linear_map"] = mat(*s.linear_map);
  j["audits"] = s.audits;
  j["seed"] = s.seed;
  j["margin"] = s.margin;
  j["tol_scale"] = s.tol_scale;
  j["tensor_chart"] = s.tensor_chart;
  j["exec"] = s.exec == Exec::serial ? "serial" : "openmp";
  j["grid"] = {{"directions", s.grid.directions}, {"membership", s.grid.membership},
               {"points", s.grid.points},         {"boundary", s.grid.boundary},
               {"legendre", s.grid.legendre},     {"pairs", s.grid.pairs},
               {"tensors", s.grid.tensors},       {"equivariance", s.grid.equivariance}};
  json tol = json::object();
  for (const auto& [k, v] : s.tolerances) tol[k] = number(v);
  j["tolerances"] = tol;
  json ex = json::object();
  for (const auto& [k, v] : s.expect) ex[k] = to_string(v);
  j["expect"] = ex;
  json ms = json::array();
  for (const Mat& m : s.matrices) ms.push_back(mat(m));
  j["matrices"] = ms;
  return j;
}

json report_to_json(const AuditReport& r, Expectation e, bool met) {
  json j;
  j["id"] = r.id;
  j["samples"] = r.samples;
  j["max_abs_error"] = number(r.max_abs_error);
  j["max_rel_error"] = number(r.max_rel_error);
  j["tolerance"] = number(r.tolerance);
  j["verdict"] = to_string(r.verdict);
  j["expected"] = to_string(e);
  j["expectation_met"] = met;
  json w = json::array();
  for (const Witness& x : r.worst) {
    json o{{"point", vec(x.point)}, {"lhs", number(x.lhs)}, {"rhs", number(x.rhs)}, {"error", number(x.error)}};
    if (x.ray.size() > 0) o["escape_ray"] = vec(x.ray);
    if (!x.note.empty()) o["note"] = x.note;
    w.push_back(o);
  }
  j["witnesses"] = w;
  json m = json::object();
  for (const auto& [k, v] : r.metrics) m[k] = number(v);
  j["metrics"] = m;
  j["notes"] = r.notes;
  j["failed_samples"] = r.failed_samples;
  return j;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::string report_json(const RunReport& r) {
  json j;
  j["version"] = r.version;
  j["scenario"] = scenario_json(r.scenario);
  j["exit_status"] = r.exit_status;
  json audits = json::array();
  for (const AuditOutcome& o : r.audits) {
    json a{{"audit", o.audit}};
    if (o.error) {
      a["error"] = *o.error;
      a["error_kind"] = o.error_kind ? to_string(*o.error_kind) : "Unknown";
    }
    json reps = json::array();
    for (std::size_t i = 0; i < o.reports.size(); ++i)
      reps.push_back(report_to_json(o.reports[i], o.expected[i], o.met[i]));
    a["reports"] = reps;
    a["sample_rows"] = o.rows.size();
    audits.push_back(a);
  }
  j["audits"] = audits;
  return j.dump(2) + "\n";
}

std::string curvature_csv(const std::vector<CurvatureRow>& rows, int n) {
  std::ostringstream os;
  os << "family,n";
  for (int i = 1; i < n; ++i) os << ",chart_u" << i;
  for (int i = 1; i <= n; ++i) os << ",x_" << i;
  os << ",kappa,rho_aff,pair_product\n";
  for (const CurvatureRow& r : rows) {
    os << r.family << ',' << r.n;
    for (int i = 0; i < n - 1; ++i) {
      os << ',';
      if (i < r.chart_u.size()) os << fmt(r.chart_u(i));
    }
    for (int i = 0; i < n; ++i) {
      os << ',';
      if (i < r.x.size()) os << fmt(r.x(i));
    }
    os << ',' << fmt(r.kappa) << ',' << fmt(r.rho_aff) << ',' << fmt(r.pair_product) << '\n';
  }
  return os.str();
}

void print_summary(std::ostream& os, const RunReport& r) {
  os << "scenario " << r.scenario.name << " (" << r.scenario.family.family << ")\n";
  os << std::left << std::setw(28) << "identity" << std::right << std::setw(8) << "samples" << std::setw(12)
     << "max error" << std::setw(12) << "tolerance" << "  " << std::left << std::setw(8) << "verdict"
     << "expected\n";
  for (const AuditOutcome& o : r.audits) {
    if (o.error) {
      os << std::left << std::setw(28) << o.audit << "ERROR " << *o.error << '\n';
    }
    for (std::size_t i = 0; i < o.reports.size(); ++i) {
      const AuditReport& a = o.reports[i];
      const double shown = a.worst.empty() ? 0.0 : a.worst.front().error;
      os << std::left << std::setw(28) << a.id << std::right << std::setw(8) << a.samples << std::setw(12)
         << short_fmt(shown) << std::setw(12) << short_fmt(a.tolerance) << "  " << std::left << std::setw(8)
         << to_string(a.verdict) << to_string(o.expected[i]) << (o.met[i] ? "" : "  <- unexpected") << '\n';
    }
  }
  os << "exit status " << r.exit_status << '\n';
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw Error(ErrorKind::InvalidArgument, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

WrittenFiles write_run(const RunReport& r, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  WrittenFiles out;
  for (const AuditOutcome& o : r.audits) {
    if (o.rows.empty()) continue;
    const auto p = out_dir / (o.audit + "_samples.csv");
    write_atomically(p, curvature_csv(o.rows, o.rows.front().n));
    out.tables.push_back(p);
  }
  out.report = out_dir / "report.json";
  write_atomically(out.report, report_json(r));
  return out;
}

void write_timing(const std::filesystem::path& out_dir, double seconds) {
  std::filesystem::create_directories(out_dir);
  write_atomically(out_dir / "timing.json", json{{"wall_clock_seconds", seconds}}.dump(2) + "\n");
}

}  // namespace copolar
