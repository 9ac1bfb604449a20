#include "copolar/audit_report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace copolar {

std::string to_string(Verdict v) { return v == Verdict::holds ? "HOLDS" : "FAILS"; }

double relative_error(double a, double b, double floor) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(b), floor);
}

AuditBuilder::AuditBuilder(std::string id, double tolerance, std::size_t keep) : keep_(keep) {
  report_.id = std::move(id);
  report_.tolerance = tolerance;
}

void AuditBuilder::add(Vec point, double lhs, double rhs, double abs_err, double rel_err, double error) {
  Witness w;
  w.point = std::move(point);
  w.lhs = lhs;
  w.rhs = rhs;
  w.error = error;
  add(std::move(w), abs_err, rel_err);
}

void AuditBuilder::add(Witness w, double abs_err, double rel_err) {
  ++report_.samples;
  // NaN compares false everywhere; treat it as the worst possible error.
  if (std::isnan(w.error)) w.error = std::numeric_limits<double>::infinity();
  if (std::isnan(abs_err)) abs_err = std::numeric_limits<double>::infinity();
  if (std::isnan(rel_err)) rel_err = std::numeric_limits<double>::infinity();
  report_.max_abs_error = std::max(report_.max_abs_error, abs_err);
  report_.max_rel_error = std::max(report_.max_rel_error, rel_err);
  all_.push_back(std::move(w));
}

void AuditBuilder::add_failure(Vec point, std::string why, std::optional<ErrorKind> kind) {
  if (report_.failed_samples++ == 0) {
    report_.first_failure = why;
    report_.failure_kind = kind;
  }
  Witness w;
  w.point = std::move(point);
  w.lhs = std::numeric_limits<double>::quiet_NaN();
  w.rhs = std::numeric_limits<double>::quiet_NaN();
  w.error = std::numeric_limits<double>::infinity();
  w.note = std::move(why);
  const double inf = w.error;
  add(std::move(w), inf, inf);
}

AuditReport AuditBuilder::finish() {
  // Stable sort keeps index order among equal errors, so reports are
  // reproducible regardless of how samples were scheduled.
  std::stable_sort(all_.begin(), all_.end(), [](const Witness& a, const Witness& b) { return a.error > b.error; });
  bool ok = report_.samples > 0;
  for (const Witness& w : all_) ok = ok && w.error <= report_.tolerance;
  report_.verdict = ok ? Verdict::holds : Verdict::fails;
  const std::size_t keep = std::min(keep_, all_.size());
  report_.worst.assign(all_.begin(), all_.begin() + static_cast<std::ptrdiff_t>(keep));
  if (report_.samples == 0) report_.notes.push_back("no samples evaluated");
  return std::move(report_);
}

}  // namespace copolar
