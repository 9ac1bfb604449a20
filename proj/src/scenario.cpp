#include "copolar/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "copolar/error.hpp"

namespace copolar {
namespace {

namespace pt = boost::property_tree;

// Boost keeps no line numbers past parsing, so diagnostics re-scan the text for
// the section header and key.
class Locator {
 public:
  Locator(const std::string& text, std::string origin) : origin_(std::move(origin)) {
    std::istringstream in(text);
    std::string line, section;
    for (int no = 1; std::getline(in, line); ++no) {
      std::string t = boost::trim_copy(line);
      if (t.empty() || t[0] == ';' || t[0] == '#') continue;
      if (t.front() == '[' && t.back() == ']') {
        section = boost::trim_copy(t.substr(1, t.size() - 2));
        lines_.emplace(section, no);
        continue;
      }
      const auto eq = t.find('=');
      if (eq != std::string::npos) lines_.emplace(section + "\x1f" + boost::trim_copy(t.substr(0, eq)), no);
    }
  }

  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& msg,
                         ErrorKind kind = ErrorKind::ParseError) const {
    auto it = lines_.find(key.empty() ? section : section + "\x1f" + key);
    const std::string where = it == lines_.end() ? origin_ : origin_ + ":" + std::to_string(it->second);
    const std::string what = key.empty() ? "[" + section + "]" : "[" + section + "] " + key;
    throw Error(kind, where + ": " + what + ": " + msg);
  }

 private:
  std::string origin_;
  std::map<std::string, int> lines_;
};

double to_double(const Locator& loc, const std::string& sec, const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    loc.fail(sec, key, "expected a number, got '" + v + "'");
  }
}

long long to_integer(const Locator& loc, const std::string& sec, const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long d = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    loc.fail(sec, key, "expected an integer, got '" + v + "'");
  }
}

int to_count(const Locator& loc, const std::string& sec, const std::string& key, const std::string& v) {
  const long long n = to_integer(loc, sec, key, v);
  if (n < 1 || n > 1000000) loc.fail(sec, key, "count must lie in [1, 1000000]");
  return static_cast<int>(n);
}

std::vector<std::string> split(const std::string& v, const char* seps) {
  std::vector<std::string> parts;
  boost::split(parts, v, boost::is_any_of(seps));
  for (auto& p : parts) boost::trim(p);
  parts.erase(std::remove(parts.begin(), parts.end(), std::string()), parts.end());
  return parts;
}

Vec to_vector(const Locator& loc, const std::string& sec, const std::string& key, const std::string& v) {
  const auto parts = split(v, ",");
  if (parts.empty()) loc.fail(sec, key, "expected a comma-separated vector");
  Vec out(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) out[static_cast<Eigen::Index>(i)] = to_double(loc, sec, key, parts[i]);
  return out;
}

// Rows separated by ';', entries by ','.
Mat to_matrix(const Locator& loc, const std::string& sec, const std::string& key, const std::string& v) {
  const auto rows = split(v, ";");
  if (rows.empty()) loc.fail(sec, key, "expected matrix rows separated by ';'");
  Mat out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Vec row = to_vector(loc, sec, key, rows[r]);
    if (r == 0) out.resize(static_cast<Eigen::Index>(rows.size()), row.size());
    if (row.size() != out.cols()) loc.fail(sec, key, "matrix rows have different lengths");
    out.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  if (out.rows() != out.cols()) loc.fail(sec, key, "matrix must be square");
  return out;
}

void check_keys(const Locator& loc, const std::string& sec, const pt::ptree& tree, std::set<std::string> allowed) {
  for (const auto& [key, value] : tree) {
    if (!allowed.count(key)) loc.fail(sec, key, "unknown key");
  }
}

}  // namespace

std::string to_string(Expectation e) {
  switch (e) {
    case Expectation::holds: return "HOLDS";
    case Expectation::fails: return "FAILS";
    case Expectation::any: return "ANY";
  }
  return "ANY";
}

const std::vector<std::string>& known_audits() {
  static const std::vector<std::string> ids{"involution",    "eq1_1", "eq2_1n", "eq3_2", "crucial_pairs",
                                            "eq4_1",         "affine_sphere", "eq5_1", "eq5_2", "equivariance"};
  return ids;
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::ParseError, origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  const Locator loc(text, origin);
  Scenario s;
  s.name = std::filesystem::path(origin).stem().string();

  static const std::set<std::string> sections{"scenario", "family", "cone", "linear_map", "grid",
                                              "tolerance", "expect", "equivariance"};
  for (const auto& [name, sub] : tree) {
    if (!sections.count(name)) loc.fail(name, "", "unknown section");
    if (!sub.data().empty()) loc.fail(name, "", "keys must appear inside a section");
  }
  if (!tree.get_child_optional("family")) loc.fail("family", "", "missing [family] section");

  if (auto sec = tree.get_child_optional("scenario")) {
    check_keys(loc, "scenario", *sec, {"name", "audits", "seed", "margin", "tol_scale", "tensor_chart", "exec"});
    for (const auto& [key, node] : *sec) {
      const std::string v = boost::trim_copy(node.data());
      if (key == "name") s.name = v;
      if (key == "seed") {
        const long long seed = to_integer(loc, "scenario", key, v);
        if (seed < 0) loc.fail("scenario", key, "seed must be non-negative");
        s.seed = static_cast<std::uint64_t>(seed);
      }
      if (key == "margin") {
        s.margin = to_double(loc, "scenario", key, v);
        if (!(s.margin > 0.0 && s.margin < 1.0)) loc.fail("scenario", key, "margin must lie in (0, 1) radians");
      }
      if (key == "tol_scale") {
        s.tol_scale = to_double(loc, "scenario", key, v);
        if (!(s.tol_scale > 0.0)) loc.fail("scenario", key, "tol_scale must be positive");
      }
      if (key == "tensor_chart") {
        if (v != "footprint" && v != "exponential") loc.fail("scenario", key, "expected footprint or exponential");
        s.tensor_chart = v;
      }
      if (key == "exec") {
        if (v != "serial" && v != "openmp") loc.fail("scenario", key, "expected serial or openmp");
        s.exec = v == "serial" ? Exec::serial : Exec::openmp;
      }
      if (key == "audits") {
        for (const std::string& id : split(v, ",")) {
          const auto& ids = known_audits();
          if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
            loc.fail("scenario", key, "unknown audit id '" + id + "'", ErrorKind::UnknownAudit);
          }
          s.audits.push_back(id);
        }
      }
    }
  }
  if (s.audits.empty()) loc.fail("scenario", "audits", "no audits listed");

  {
    const auto& sec = tree.get_child("family");
    check_keys(loc, "family", sec, {"name", "c", "n", "delta", "height", "apex", "normal"});
    for (const auto& [key, node] : sec) {
      const std::string v = boost::trim_copy(node.data());
      if (key == "name") s.family.family = v;
      if (key == "c") s.family.c = to_double(loc, "family", key, v);
      if (key == "n") s.family.n = static_cast<int>(to_integer(loc, "family", key, v));
      if (key == "delta") s.family.delta = to_double(loc, "family", key, v);
      if (key == "height") s.family.height = to_double(loc, "family", key, v);
      if (key == "apex") s.family.apex = to_vector(loc, "family", key, v);
      if (key == "normal") s.family.normal = to_vector(loc, "family", key, v);
    }
    if (s.family.family.empty()) loc.fail("family", "name", "missing family name");
  }

  if (auto sec = tree.get_child_optional("cone")) {
    check_keys(loc, "cone", *sec, {"kind", "n", "axis", "half_angle", "generators"});
    ConeSpec c;
    for (const auto& [key, node] : *sec) {
      const std::string v = boost::trim_copy(node.data());
      if (key == "kind") c.kind = v;
      if (key == "n") c.n = static_cast<int>(to_integer(loc, "cone", key, v));
      if (key == "axis") c.axis = to_vector(loc, "cone", key, v);
      if (key == "half_angle") c.half_angle = to_double(loc, "cone", key, v);
      if (key == "generators") {
        for (const std::string& g : split(v, ";")) c.generators.push_back(to_vector(loc, "cone", key, g));
      }
    }
    s.family.cone = c;
  }

  if (auto sec = tree.get_child_optional("linear_map")) {
    check_keys(loc, "linear_map", *sec, {"rows"});
    if (auto rows = sec->get_optional<std::string>("rows")) s.linear_map = to_matrix(loc, "linear_map", "rows", *rows);
  }

  if (auto sec = tree.get_child_optional("grid")) {
    check_keys(loc, "grid", *sec,
               {"directions", "membership", "points", "boundary", "legendre", "pairs", "tensors", "equivariance"});
    for (const auto& [key, node] : *sec) {
      const int n = to_count(loc, "grid", key, boost::trim_copy(node.data()));
      if (key == "directions") s.grid.directions = n;
      if (key == "membership") s.grid.membership = n;
      if (key == "points") s.grid.points = n;
      if (key == "boundary") s.grid.boundary = n;
      if (key == "legendre") s.grid.legendre = n;
      if (key == "pairs") s.grid.pairs = n;
      if (key == "tensors") s.grid.tensors = n;
      if (key == "equivariance") s.grid.equivariance = n;
    }
  }

  if (auto sec = tree.get_child_optional("tolerance")) {
    for (const auto& [key, node] : *sec) {
      const double t = to_double(loc, "tolerance", key, boost::trim_copy(node.data()));
      if (!(t > 0.0)) loc.fail("tolerance", key, "tolerance must be positive");
      s.tolerances[key] = t;
    }
  }

  if (auto sec = tree.get_child_optional("expect")) {
    for (const auto& [key, node] : *sec) {
      const std::string v = boost::to_upper_copy(boost::trim_copy(node.data()));
      if (v == "HOLDS") s.expect[key] = Expectation::holds;
      else if (v == "FAILS") s.expect[key] = Expectation::fails;
      else if (v == "ANY") s.expect[key] = Expectation::any;
      else loc.fail("expect", key, "expected HOLDS, FAILS or ANY");
    }
  }

  if (auto sec = tree.get_child_optional("equivariance")) {
    check_keys(loc, "equivariance", *sec, {"matrices"});
    // Matrices separated by '|'.
    for (const std::string& m : split(sec->get<std::string>("matrices", ""), "|")) {
      s.matrices.push_back(to_matrix(loc, "equivariance", "matrices", m));
    }
  }

  // Validate the family eagerly so parameter errors carry a location.
  try {
    (void)scenario_family(s);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    loc.fail("family", "", e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

PseudoCone scenario_family(const Scenario& s) {
  PseudoCone k = make_family(s.family);
  if (s.linear_map) {
    if (s.linear_map->rows() != k.dim()) throw Error(ErrorKind::InvalidArgument, "linear map has wrong dimension");
    k = linear_image(k, *s.linear_map);
  }
  return k;
}

}  // namespace copolar
