#pragma once

#include "dynpeak/time_series.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace dynpeak::io {

inline constexpr std::string_view kSeriesHeader = "time_min,lh_ng_ml";

/// Parses a `time_min,lh_ng_ml` CSV. Blank lines are ignored and CRLF line
/// endings accepted. Errors carry the 1-based line number.
TimeSeries read_series(std::istream& in);
TimeSeries read_series(const std::filesystem::path& path);
TimeSeries parse_series(std::string_view text);

/// Writes the series with 6 significant digits per value.
void write_series(std::ostream& out, const TimeSeries& series);

/// Formats `x` with `%.6g`.
std::string format6(double x);
/// `x` rounded to 6 significant digits.
double round6(double x);

} // namespace dynpeak::io
