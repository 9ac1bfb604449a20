// copolar: runs audit scenarios, lists the built-in families and evaluates
// single operations for debugging.
//
// Exit status: 0 success, 2 parse/usage error, 3 an audit missed its expected
// verdict, 4 numeric degeneracy.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "copolar/audits.hpp"
#include "copolar/centroaffine.hpp"
#include "copolar/duality.hpp"
#include "copolar/report.hpp"

namespace {

using namespace copolar;

Vec parse_point(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad coordinate '" + item + "' in point '" + text + "'");
    }
  }
  Vec v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  return v;
}

std::string show(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string show(const Vec& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + show(v(i));
  return s + ")";
}

std::string show(const Mat& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) s += (i ? "; " : "") + show(Vec(m.row(i).transpose()));
  return s + "]";
}

std::string show(const Tensor3& t) {
  std::string s;
  const int n = t.size();
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c)
        s += "A" + std::to_string(a + 1) + std::to_string(b + 1) + std::to_string(c + 1) + " = " + show(t(a, b, c)) + "\n";
  return s;
}

int status_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownAudit:
    case ErrorKind::InvalidArgument: return 2;
    default: return 4;
  }
}

const std::vector<std::string>& eval_ops() {
  static const std::vector<std::string> ops{
      "radial",        "support",      "gauge",        "member",       "copolar_radial", "htilde",
      "ratio_support", "scale_saddle", "legendre",     "crucial_map",  "crucial_map_hessian",
      "gauss_curvature", "equiaffine_support", "ca_metric", "cubic_form"};
  return ops;
}

// The chart operations take an ambient direction and read it on the footprint chart.
void eval_op(const std::string& op, const PseudoCone& k, const Vec& x, std::uint64_t seed) {
  if (x.size() != k.dim()) throw Error(ErrorKind::InvalidArgument, "point has the wrong dimension");
  SearchOptions opts;
  opts.seed = seed;
  const BoundaryChart chart = BoundaryChart::footprint(k, 0.0);
  auto chart_point = [&] {
    const Vec p = chart.to_params(x);
    std::cout << "chart point " << show(p) << "\n";
    return p;
  };
  if (op == "radial") std::cout << show(radial(k, x)) << "\n";
  else if (op == "support") std::cout << show(support(k, x, opts)) << "\n";
  else if (op == "gauge") std::cout << show(gauge(k, x)) << "\n";
  else if (op == "member") std::cout << (member(k, x) ? "true" : "false") << "\n";
  else if (op == "copolar_radial") std::cout << show(radial(copolar::copolar(k, opts), x)) << "\n";
  else if (op == "htilde") std::cout << show(htilde(k, x, opts)) << "\n";
  else if (op == "ratio_support") std::cout << show(ratio_support(k, x, opts)) << "\n";
  else if (op == "scale_saddle") std::cout << show(scale_saddle(k, x, opts)) << "\n";
  else if (op == "legendre") {
    LegendreSearch s;
    s.cap = k.dual_cone().footprint_cap();
    s.ray_degree = 2.0;
    s.seed = seed;
    const LegendreResult r = legendre(HTilde{k, opts}, x, s);
    std::cout << "value " << show(r.value) << (r.diverged ? " (diverged)" : "") << "\n";
    if (r.diverged) std::cout << "escape ray " << show(r.escape_ray) << "\n";
    for (double v : r.range_values) std::cout << "range best " << show(v) << "\n";
  } else if (op == "crucial_map") {
    const CrucialPair c = crucial_map(k, x);
    std::cout << "x* " << show(c.x_star) << "\npairing " << show(c.pairing) << "\n";
  } else if (op == "crucial_map_hessian") std::cout << show(crucial_map_hessian(k, x)) << "\n";
  else if (op == "gauss_curvature") std::cout << show(gauss_curvature(chart, chart_point())) << "\n";
  else if (op == "equiaffine_support") std::cout << show(equiaffine_support(chart, chart_point())) << "\n";
  else if (op == "ca_metric") std::cout << show(ca_metric(chart, chart_point())) << "\n";
  else if (op == "cubic_form") std::cout << show(cubic_form(chart, chart_point()));
  else throw Error(ErrorKind::InvalidArgument, "unknown operation '" + op + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Copolar pseudo-cones and duality audits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kLibraryVersion));

  std::string scenario_path, out_dir = "copolar-out";
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  bool serial = false;
  auto* run = app.add_subcommand("run", "Run the audits of a scenario file");
  run->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory for report.json and CSV tables");
  auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
  auto* tol_opt = run->add_option("--tol-scale", tol_scale, "Multiply every tolerance")->check(CLI::PositiveNumber);
  run->add_flag("--serial", serial, "Evaluate sample grids serially");

  app.add_subcommand("families", "List the built-in families");

  std::string op, point, family = "hyperbola", eval_scenario;
  double c = 1.0, delta = 0.1;
  int n = 3;
  auto* eval = app.add_subcommand("eval", "Evaluate one operation at one point");
  eval->add_option("op", op, "Operation")->required()->check(CLI::IsMember(eval_ops()));
  eval->add_option("point", point, "Comma-separated coordinates")->required();
  eval->add_option("--scenario", eval_scenario, "Take the family from a scenario file")->check(CLI::ExistingFile);
  eval->add_option("--family", family, "Family name");
  eval->add_option("--c", c, "Family constant c");
  eval->add_option("--n", n, "Dimension (calabi)");
  eval->add_option("--delta", delta, "Perturbation (perturbed_hyperbola)");
  eval->add_option("--seed", seed, "Search seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      Scenario s = load_scenario(scenario_path);
      if (seed_opt->count()) s.seed = seed;
      if (tol_opt->count()) s.tol_scale *= tol_scale;
      if (serial) s.exec = Exec::serial;
      const auto t0 = std::chrono::steady_clock::now();
      const RunReport r = run_scenario(s);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const WrittenFiles files = write_run(r, out_dir);
      write_timing(out_dir, secs);
      print_summary(std::cout, r);
      std::cout << "report " << files.report.string() << "\n";
      for (const auto& t : files.tables) std::cout << "table " << t.string() << "\n";
      return r.exit_status;
    }
    if (app.got_subcommand("families")) {
      for (const FamilyInfo& f : list_families()) {
        std::cout << f.name << "  [" << f.parameters << "]  C^" << f.smoothness
                  << (f.analytic_derivatives ? "  analytic derivatives" : "  finite differences")
                  << (f.closed_copolar ? "  closed copolar" : "") << "\n";
      }
      return 0;
    }
    if (*eval) {
      PseudoCone k = [&] {
        if (!eval_scenario.empty()) return scenario_family(load_scenario(eval_scenario));
        FamilySpec f;
        f.family = family;
        f.c = c;
        f.n = n;
        f.delta = delta;
        return make_family(f);
      }();
      eval_op(op, k, parse_point(point), seed);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return status_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
