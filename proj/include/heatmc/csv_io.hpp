#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "heatmc/chain.hpp"
#include "heatmc/field.hpp"

namespace heatmc::csv {

/// Shortest text that reads back to the same double (up to 17 digits),
/// locale independent.
std::string format_double(double x);

/// n rows of m comma-separated values; row i is grid row i.
template <class Tag>
void write_field(std::ostream& os, const Field<Tag>& f);
template <class Tag>
void write_field(const std::filesystem::path& path, const Field<Tag>& f);

ConductivityField read_conductivity(const std::filesystem::path& path);

/// Header "index,value", then one row per entry.
void write_boundary(std::ostream& os, const BoundaryVector& d);
void write_boundary(const std::filesystem::path& path, const BoundaryVector& d);
/// Accepts the file with or without the header row.
BoundaryVector read_boundary(const std::filesystem::path& path);

extern const char* const kTraceHeader;
extern const char* const kMetricsHeader;

std::string trace_row(const TraceRecord& r);
std::string metrics_row(const MetricRow& r);

/// Parsed metrics CSV (for reporting).
struct MetricsTable {
  std::vector<double> iteration;
  std::vector<double> alpha;
  std::vector<double> delta;
  std::vector<double> beta;  ///< empty when the run had no ground truth
  std::vector<double> gamma;
};
MetricsTable read_metrics(const std::filesystem::path& path);

}  // namespace heatmc::csv
