#pragma once

// Wire formats for inequality reports.
//
// JSON: one object per report, keys
//   inequality-id, params{m, n, t, r, s, norm-spec, function-id, seed},
//   terms[{label, value}], margins[], holds, regularization-epsilon,
//   fan-dominance[{holds, margin}], flags[]
// Absent optionals are written as null.
//
// CSV: the fixed header kCsvHeader; chains have at most five terms, unused
// term/margin cells are empty.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "tgm/inequalities.hpp"

namespace tgm {

inline constexpr const char* kCsvHeader =
    "inequality-id,m,n,t,r,s,norm-spec,function-id,seed,holds,regularization-epsilon,"
    "term1,term2,term3,term4,term5,margin1,margin2,margin3,margin4";
inline constexpr std::size_t kCsvMaxTerms = 5;

nlohmann::json report_to_json(const InequalityReport& report);
InequalityReport report_from_json(const nlohmann::json& j);
std::string report_to_csv_row(const InequalityReport& report);

enum class OutputFormat { Json, Csv };
OutputFormat parse_output_format(const std::string& text);
std::string to_string(OutputFormat f);

/// Streams reports in one format. CSV writes its header on construction, so
/// an empty stream still yields a valid file.
class ReportWriter {
 public:
  ReportWriter(std::ostream& out, OutputFormat format);
  void write(const InequalityReport& report);
  std::size_t count() const noexcept { return count_; }

 private:
  std::ostream& out_;
  OutputFormat format_;
  std::size_t count_ = 0;
};

/// Shortest round-trip decimal for a double ("inf"/"nan" spelled out).
std::string format_double(double x);

}  // namespace tgm
