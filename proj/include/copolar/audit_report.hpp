#pragma once

// Per-identity error statistics over a sample grid.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "copolar/error.hpp"
#include "copolar/numkit.hpp"

namespace copolar {

struct Witness {
  Vec point;
  double lhs = 0.0;
  double rhs = 0.0;
  double error = 0.0;  // the quantity compared against the tolerance
  Vec ray;             // escape direction for diverged suprema, else empty
  std::string note;
};

enum class Verdict { holds, fails };

std::string to_string(Verdict v);

struct AuditReport {
  std::string id;
  std::size_t samples = 0;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::holds;
  /// Sorted by error, largest first. A failing report always has one.
  std::vector<Witness> worst;
  /// Named side statistics (cross-form gaps, magnitudes, counts).
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;
  /// Samples that threw during evaluation; the first one's reason and kind.
  std::size_t failed_samples = 0;
  std::string first_failure;
  std::optional<ErrorKind> failure_kind;
};

/// Collects per-sample errors in index order and turns them into a report.
/// The caller decides which error (absolute or relative) the tolerance applies to.
class AuditBuilder {
 public:
  AuditBuilder(std::string id, double tolerance, std::size_t keep = 5);

  void add(Vec point, double lhs, double rhs, double abs_err, double rel_err, double error);
  void add(Witness w, double abs_err, double rel_err);
  /// A sample that could not be evaluated counts as an infinite error.
  void add_failure(Vec point, std::string why, std::optional<ErrorKind> kind = std::nullopt);
  void metric(const std::string& name, double value) { report_.metrics[name] = value; }
  void note(std::string text) { report_.notes.push_back(std::move(text)); }

  AuditReport finish();

 private:
  AuditReport report_;
  std::size_t keep_;
  std::vector<Witness> all_;
};

/// Relative error |a - b| / max(|b|, floor).
double relative_error(double a, double b, double floor = 1e-300);

}  // namespace copolar
