#include "dynpeak/csv.hpp"

#include "dynpeak/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace dynpeak::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v))
    throw InputError("malformed number '" + std::string(field) + "'", line);
  return v;
}

} // namespace

TimeSeries read_series(std::istream& in) {
  TimeSeries s;
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  double step = 0.0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view row = trim(raw);
    if (row.empty())
      continue;
    if (!header_seen) {
      if (row != kSeriesHeader)
        throw InputError("expected header '" + std::string(kSeriesHeader) + "'", line);
      header_seen = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
      throw InputError("malformed row: expected two comma-separated fields", line);
    const double t = parse_number(row.substr(0, comma), line);
    const double a = parse_number(row.substr(comma + 1), line);
    if (a < 0.0)
      throw InputError("negative level", line);
    if (!s.times.empty()) {
      const double d = t - s.times.back();
      if (!(d > 0.0))
        throw InputError("time is not increasing", line);
      if (s.times.size() == 1)
        step = d;
      else if (std::abs(d - step) > 1e-6 * step)
        throw InputError("non-uniform sampling grid: step " + std::to_string(d) +
                             " differs from " + std::to_string(step),
                         line);
    }
    s.times.push_back(t);
    s.values.push_back(a);
  }
  if (!header_seen)
    throw InputError("empty input: missing header '" + std::string(kSeriesHeader) + "'");
  if (s.values.empty())
    throw InputError("no samples after the header");
  return s;
}

TimeSeries read_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path.string() + "'");
  return read_series(in);
}

TimeSeries parse_series(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_series(in);
}

std::string format6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double round6(double x) { return std::strtod(format6(x).c_str(), nullptr); }

void write_series(std::ostream& out, const TimeSeries& series) {
  out << kSeriesHeader << '\n';
  for (std::size_t i = 0; i < series.size(); ++i)
    out << format6(series.times[i]) << ',' << format6(series.values[i]) << '\n';
}

} // namespace dynpeak::io
