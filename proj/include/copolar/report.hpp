#pragma once

// Run report emission: one JSON document per run (keys sorted, non-finite
// numbers as the strings "inf", "-inf", "nan"), a CSV table of curvature
// samples, and a plain-text summary. The JSON document holds nothing that
// varies between identical runs; wall-clock goes to a separate timing file.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "copolar/audits.hpp"

namespace copolar {

std::string report_json(const RunReport& r);
std::string curvature_csv(const std::vector<CurvatureRow>& rows, int n);
void print_summary(std::ostream& os, const RunReport& r);

/// Writes `content` to `path` through a temporary file and a rename.
void write_atomically(const std::filesystem::path& path, const std::string& content);

struct WrittenFiles {
  std::filesystem::path report;
  std::vector<std::filesystem::path> tables;
};

/// report.json plus one <audit>_samples.csv per audit that produced rows.
WrittenFiles write_run(const RunReport& r, const std::filesystem::path& out_dir);
void write_timing(const std::filesystem::path& out_dir, double seconds);

}  // namespace copolar
