#include "heatmc/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace heatmc::csv {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

double parse_or_throw(const std::string& text, const std::filesystem::path& path, std::size_t line) {
  double v = 0.0;
  if (!parse_double(text, v)) {
    throw InputError(path.string() + ":" + std::to_string(line) + ": \"" + trim(text) +
                     "\" is not a number");
  }
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

template <class Tag>
void write_field(std::ostream& os, const Field<Tag>& f) {
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = 0; j < f.cols(); ++j) {
      if (j) os << ',';
      os << format_double(f(i, j));
    }
    os << '\n';
  }
}

template <class Tag>
void write_field(const std::filesystem::path& path, const Field<Tag>& f) {
  auto out = open_out(path);
  write_field(out, f);
  if (!out) throw IoError("failed writing " + path.string());
}

template void write_field(std::ostream&, const ConductivityField&);
template void write_field(std::ostream&, const TemperatureField&);
template void write_field(std::ostream&, const DerivativeField&);
template void write_field(const std::filesystem::path&, const ConductivityField&);
template void write_field(const std::filesystem::path&, const TemperatureField&);
template void write_field(const std::filesystem::path&, const DerivativeField&);

ConductivityField read_conductivity(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (rows == 0) cols = cells.size();
    if (cells.size() != cols) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(cols) + " values, found " + std::to_string(cells.size()));
    }
    for (const auto& c : cells) values.push_back(parse_or_throw(c, path, lineno));
    ++rows;
  }
  if (rows == 0) throw InputError(path.string() + ": empty field file");
  return ConductivityField(rows, cols, std::move(values));
}

void write_boundary(std::ostream& os, const BoundaryVector& d) {
  os << "index,value\n";
  for (std::size_t k = 0; k < d.size(); ++k) os << k << ',' << format_double(d.values[k]) << '\n';
}

void write_boundary(const std::filesystem::path& path, const BoundaryVector& d) {
  auto out = open_out(path);
  write_boundary(out, d);
  if (!out) throw IoError("failed writing " + path.string());
}

BoundaryVector read_boundary(const std::filesystem::path& path) {
  auto in = open_in(path);
  BoundaryVector d;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (lineno == 1 && cells.size() == 2 && trim(cells[0]) == "index") continue;
    if (cells.size() != 2) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected index,value");
    }
    const double idx = parse_or_throw(cells[0], path, lineno);
    if (idx != static_cast<double>(d.size())) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": indices must run 0,1,2,...");
    }
    d.values.push_back(parse_or_throw(cells[1], path, lineno));
  }
  return d;
}

const char* const kTraceHeader =
    "iter,status,alpha,alpha_h,accepted,D1,D2,D3,z0,z1,z2,z3,u,anchor_row,anchor_col,omega";
const char* const kMetricsHeader = "iter,alpha,accepted,D1,D2,D3,z0,delta,beta,gamma";

std::string trace_row(const TraceRecord& r) {
  std::string s;
  s.reserve(256);
  s += std::to_string(r.iteration);
  s += ',' + to_string(r.status);
  s += ',' + format_double(r.alpha);
  s += ',' + format_double(r.alpha_h);
  s += r.accepted ? ",1" : ",0";
  s += ',' + format_double(r.terms.d1);
  s += ',' + format_double(r.terms.d2);
  s += ',' + format_double(r.terms.d3);
  s += ',' + format_double(r.z.z0);
  for (double zi : r.z.z) s += ',' + format_double(zi);
  s += ',' + format_double(r.u);
  s += ',' + std::to_string(r.move.row);
  s += ',' + std::to_string(r.move.col);
  s += ',' + format_double(r.move.omega);
  return s;
}

std::string metrics_row(const MetricRow& r) {
  std::string s;
  s.reserve(192);
  s += std::to_string(r.iteration);
  s += ',' + format_double(r.alpha);
  s += r.accepted ? ",1" : ",0";
  s += ',' + format_double(r.terms.d1);
  s += ',' + format_double(r.terms.d2);
  s += ',' + format_double(r.terms.d3);
  s += ',' + format_double(r.z0);
  s += ',' + format_double(r.delta);
  s += ',';
  if (r.beta) s += format_double(*r.beta);
  s += ',' + std::to_string(r.gamma);
  return s;
}

MetricsTable read_metrics(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != kMetricsHeader) {
    throw InputError(path.string() + ": missing or unexpected metrics header");
  }
  MetricsTable t;
  bool beta_seen = false;
  bool beta_missing = false;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto c = split(line);
    if (c.size() != 10) throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected 10 columns");
    t.iteration.push_back(parse_or_throw(c[0], path, lineno));
    t.alpha.push_back(parse_or_throw(c[1], path, lineno));
    t.delta.push_back(parse_or_throw(c[7], path, lineno));
    if (trim(c[8]).empty()) {
      beta_missing = true;
    } else {
      beta_seen = true;
      t.beta.push_back(parse_or_throw(c[8], path, lineno));
    }
    t.gamma.push_back(parse_or_throw(c[9], path, lineno));
  }
  if (beta_seen && beta_missing) throw InputError(path.string() + ": beta column partially empty");
  return t;
}

}  // namespace heatmc::csv
