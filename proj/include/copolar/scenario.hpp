#pragma once

// Scenario files: INI-style sections of key = value pairs. The format is
// documented in docs/scenario-format.md.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "copolar/parallel.hpp"
#include "copolar/pseudocone.hpp"

namespace copolar {

enum class Expectation { holds, fails, any };

std::string to_string(Expectation e);

struct GridSizes {
  int directions = 200;  // involution, eq1_1
  int membership = 1000; // involution on class-0 families
  int points = 100;      // eq3_2
  int boundary = 50;     // crucial_pairs
  int legendre = 50;     // eq2_1n
  int pairs = 30;        // eq4_1, affine_sphere
  int tensors = 20;      // eq5_1, eq5_2
  int equivariance = 100;
};

struct Scenario {
  std::string name;
  FamilySpec family;
  std::optional<Mat> linear_map;
  std::vector<std::string> audits;
  std::uint64_t seed = 0;
  double margin = defaults::kGridMargin;
  double tol_scale = 1.0;
  GridSizes grid;
  /// Per-report tolerance overrides, keyed by report id (e.g. "eq2_1n.saddle").
  std::map<std::string, double> tolerances;
  /// Per-report expected verdicts; unlisted reports are expected to hold,
  /// except the sup-form Legendre reading, which defaults to "any".
  std::map<std::string, Expectation> expect;
  /// Chart for the centro-affine audits: "footprint" or "exponential".
  std::string tensor_chart = "footprint";
  /// Matrices for the equivariance audit; built-in defaults when empty.
  std::vector<Mat> matrices;
  Exec exec = Exec::openmp;
};

const std::vector<std::string>& known_audits();

/// Parses scenario text. Errors carry "origin:line: message" diagnostics.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<scenario>");
Scenario load_scenario(const std::string& path);

/// The family with the optional linear map applied.
PseudoCone scenario_family(const Scenario& s);

}  // namespace copolar
