#pragma once

// JSON interchange for detection results.

#include "dynpeak/analysis.hpp"
#include "dynpeak/time_series.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dynpeak::io {

inline constexpr std::string_view kToolVersion = "dynpeak 0.3.0";

struct Provenance {
  std::string input_sha256;
  std::string tool_version{kToolVersion};
  std::optional<std::uint64_t> seed;
};

/// Flat, serialisation-friendly view of a DetectionResult. Times are in
/// minutes and levels in ng/ml; indexes are 0-based.
struct DetectionResultDocument {
  DetectionParams params;

  std::vector<std::size_t> pulse_indexes;
  std::vector<double> pulse_times;
  std::vector<double> pulse_amplitudes;

  std::vector<double> ipi_values;
  std::vector<double> ipi_anchor_times;

  std::vector<double> tunnel_coeffs;  // empty without a fit
  double tunnel_center = 0.0;
  std::vector<double> tunnel_times;
  std::vector<double> tunnel_trend;
  std::vector<double> tunnel_lower;
  std::vector<double> tunnel_upper;

  std::vector<std::size_t> upper_outliers;
  std::vector<std::size_t> lower_outliers;
  struct Diagnostic {
    std::size_t index;
    std::string side;  // "upper" | "lower"
    std::string tag;
    bool operator==(const Diagnostic&) const = default;
  };
  std::vector<Diagnostic> diagnostics;

  Provenance provenance;
};

DetectionResultDocument make_document(const TimeSeries& series,
                                      const DetectionResult& result,
                                      Provenance provenance);

nlohmann::json to_json(const DetectionResultDocument& doc);
DetectionResultDocument from_json(const nlohmann::json& j);

/// Canonical text: sorted keys, every float at 6 significant digits,
/// two-space indentation, trailing newline.
std::string write_result(const DetectionResultDocument& doc);
DetectionResultDocument read_result(std::string_view text);

/// Hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

nlohmann::json params_to_json(const DetectionParams& p);
/// Applies the keys present in `j` on top of `base`; unknown keys are an
/// InputError. Does not validate ranges.
DetectionParams params_from_json(const nlohmann::json& j, DetectionParams base = {});

} // namespace dynpeak::io
