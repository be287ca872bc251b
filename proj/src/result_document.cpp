#include "dynpeak/result_document.hpp"

#include "dynpeak/csv.hpp"
#include "dynpeak/error.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <stdexcept>

namespace dynpeak::io {

using nlohmann::json;

namespace {

json rounded(const std::vector<double>& xs) {
  json arr = json::array();
  for (double x : xs)
    arr.push_back(round6(x));
  return arr;
}

json indexes(const std::vector<std::size_t>& xs) {
  json arr = json::array();
  for (auto x : xs)
    arr.push_back(x);
  return arr;
}

template <typename T>
std::vector<T> vec(const json& j, const char* key) {
  return j.at(key).get<std::vector<T>>();
}

} // namespace

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

json params_to_json(const DetectionParams& p) {
  return {
      {"sampling_period", round6(p.sampling_period)},
      {"nominal_period", round6(p.nominal_period)},
      {"relative_threshold", round6(p.relative_threshold)},
      {"absolute_threshold", round6(p.absolute_threshold)},
      {"three_point_threshold", round6(p.three_point_threshold)},
      {"tunnel_lower_ratio", round6(p.tunnel_lower_ratio)},
      {"tunnel_upper_ratio", round6(p.tunnel_upper_ratio)},
  };
}

DetectionParams params_from_json(const json& j, DetectionParams base) {
  if (!j.is_object())
    throw InputError("params must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number())
      throw InputError("parameter '" + key + "' must be a number");
    const double v = value.get<double>();
    if (key == "sampling_period")
      base.sampling_period = v;
    else if (key == "nominal_period")
      base.nominal_period = v;
    else if (key == "relative_threshold")
      base.relative_threshold = v;
    else if (key == "absolute_threshold")
      base.absolute_threshold = v;
    else if (key == "three_point_threshold")
      base.three_point_threshold = v;
    else if (key == "tunnel_lower_ratio")
      base.tunnel_lower_ratio = v;
    else if (key == "tunnel_upper_ratio")
      base.tunnel_upper_ratio = v;
    else
      throw InputError("unknown parameter '" + key + "'");
  }
  return base;
}

DetectionResultDocument make_document(const TimeSeries& series, const DetectionResult& result,
                                      Provenance provenance) {
  DetectionResultDocument d;
  d.params = result.params;
  d.pulse_indexes = result.pulses;
  for (auto idx : result.pulses) {
    d.pulse_times.push_back(series.times.at(idx));
    d.pulse_amplitudes.push_back(series.values.at(idx));
  }
  d.ipi_values = result.ipi.values;
  d.ipi_anchor_times = result.ipi.anchor_times;
  if (result.fit) {
    d.tunnel_coeffs.assign(result.fit->coeffs.begin(), result.fit->coeffs.end());
    d.tunnel_center = result.fit->center;
  }
  d.tunnel_times = result.edges.times;
  d.tunnel_trend = result.edges.trend;
  d.tunnel_lower = result.edges.lower;
  d.tunnel_upper = result.edges.upper;
  d.upper_outliers = result.outliers.upper;
  d.lower_outliers = result.outliers.lower;
  for (const auto& o : result.outliers.diagnostics)
    d.diagnostics.push_back({o.index, o.upper ? "upper" : "lower", std::string(to_string(o.tag))});
  d.provenance = std::move(provenance);
  return d;
}

json to_json(const DetectionResultDocument& d) {
  json diagnostics = json::array();
  for (const auto& x : d.diagnostics)
    diagnostics.push_back({{"index", x.index}, {"side", x.side}, {"tag", x.tag}});
  return {
      {"params", params_to_json(d.params)},
      {"pulses",
       {{"indexes", indexes(d.pulse_indexes)},
        {"times", rounded(d.pulse_times)},
        {"amplitudes", rounded(d.pulse_amplitudes)}}},
      {"ipi", {{"values", rounded(d.ipi_values)}, {"anchor_times", rounded(d.ipi_anchor_times)}}},
      {"tunnel",
       {{"coeffs", rounded(d.tunnel_coeffs)},
        {"center", round6(d.tunnel_center)},
        {"times", rounded(d.tunnel_times)},
        {"trend", rounded(d.tunnel_trend)},
        {"lower", rounded(d.tunnel_lower)},
        {"upper", rounded(d.tunnel_upper)}}},
      {"outliers",
       {{"upper", indexes(d.upper_outliers)},
        {"lower", indexes(d.lower_outliers)},
        {"diagnostics", diagnostics}}},
      {"provenance",
       {{"input_sha256", d.provenance.input_sha256},
        {"tool_version", d.provenance.tool_version},
        {"seed", d.provenance.seed ? json(*d.provenance.seed) : json(nullptr)}}},
  };
}

DetectionResultDocument from_json(const json& j) {
  try {
    DetectionResultDocument d;
    d.params = params_from_json(j.at("params"));
    const auto& pulses = j.at("pulses");
    d.pulse_indexes = vec<std::size_t>(pulses, "indexes");
    d.pulse_times = vec<double>(pulses, "times");
    d.pulse_amplitudes = vec<double>(pulses, "amplitudes");
    const auto& ipi = j.at("ipi");
    d.ipi_values = vec<double>(ipi, "values");
    d.ipi_anchor_times = vec<double>(ipi, "anchor_times");
    const auto& tunnel = j.at("tunnel");
    d.tunnel_coeffs = vec<double>(tunnel, "coeffs");
    d.tunnel_center = tunnel.at("center").get<double>();
    d.tunnel_times = vec<double>(tunnel, "times");
    d.tunnel_trend = vec<double>(tunnel, "trend");
    d.tunnel_lower = vec<double>(tunnel, "lower");
    d.tunnel_upper = vec<double>(tunnel, "upper");
    const auto& outliers = j.at("outliers");
    d.upper_outliers = vec<std::size_t>(outliers, "upper");
    d.lower_outliers = vec<std::size_t>(outliers, "lower");
    for (const auto& x : outliers.at("diagnostics"))
      d.diagnostics.push_back({x.at("index").get<std::size_t>(), x.at("side").get<std::string>(),
                               x.at("tag").get<std::string>()});
    const auto& prov = j.at("provenance");
    d.provenance.input_sha256 = prov.at("input_sha256").get<std::string>();
    d.provenance.tool_version = prov.at("tool_version").get<std::string>();
    if (!prov.at("seed").is_null())
      d.provenance.seed = prov.at("seed").get<std::uint64_t>();
    return d;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed result document: ") + e.what());
  }
}

std::string write_result(const DetectionResultDocument& doc) { return to_json(doc).dump(2) + "\n"; }

DetectionResultDocument read_result(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw InputError("result document is not valid JSON");
  return from_json(j);
}

} // namespace dynpeak::io
