#pragma once

// Audit orchestration: runs the identity audits a scenario lists and reduces
// their verdicts against the configured expectations.

#include <optional>
#include <string>
#include <vector>

#include "copolar/audit_report.hpp"
#include "copolar/diffgeo.hpp"
#include "copolar/error.hpp"
#include "copolar/scenario.hpp"

namespace copolar {

inline constexpr const char* kLibraryVersion = "1.0.0";

struct AuditOutcome {
  std::string audit;
  std::vector<AuditReport> reports;
  std::vector<CurvatureRow> rows;  // eq4_1 only
  std::optional<std::string> error;
  std::optional<ErrorKind> error_kind;
  /// Per report: expected verdict and whether it was met.
  std::vector<Expectation> expected;
  std::vector<bool> met;
};

struct RunReport {
  Scenario scenario;
  std::vector<AuditOutcome> audits;
  std::string version = kLibraryVersion;
  int exit_status = 0;
};

/// Tolerance of a report id for a family, after overrides and tol_scale.
double tolerance_for(const Scenario& s, const PseudoCone& k, const std::string& report_id);
Expectation expectation_for(const Scenario& s, const std::string& report_id);
bool meets(const AuditReport& r, Expectation e);

/// Runs one audit id. Numeric failures are captured in the outcome.
AuditOutcome run_audit(const Scenario& s, const PseudoCone& k, const std::string& audit);
RunReport run_scenario(const Scenario& s);

/// Default fixed matrices for the equivariance audit (five per dimension).
std::vector<Mat> default_matrices(const Cone& c);

/// 0 ok, 3 expectation failure, 4 numeric degeneracy.
int exit_status(const std::vector<AuditOutcome>& outcomes);

}  // namespace copolar
