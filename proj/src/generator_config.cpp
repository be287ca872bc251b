#include "dynpeak/generator_config.hpp"

#include "dynpeak/error.hpp"

#include <fstream>
#include <string>

namespace dynpeak::io {

using nlohmann::json;

namespace {

lh::TimeFunction time_function(const json& j, const std::string& key) {
  if (j.is_number())
    return lh::constant(j.get<double>());
  if (j.is_array() && !j.empty()) {
    std::vector<double> coeffs;
    for (const auto& c : j) {
      if (!c.is_number())
        throw InputError("'" + key + "' coefficients must be numbers");
      coeffs.push_back(c.get<double>());
    }
    return lh::polynomial(std::move(coeffs));
  }
  throw InputError("'" + key + "' must be a number or a non-empty coefficient array");
}

double number(const json& j, const std::string& key) {
  if (!j.is_number())
    throw InputError("'" + key + "' must be a number");
  return j.get<double>();
}

} // namespace

lh::Scenario scenario_from_json(const json& j) {
  if (!j.is_object())
    throw InputError("generator config must be a JSON object");
  lh::Scenario s = lh::scenario("A");
  for (const auto& [key, value] : j.items()) {
    if (key == "spike_amplitude")
      s.generator.spike_amplitude = time_function(value, key);
    else if (key == "spike_period")
      s.generator.spike_period = time_function(value, key);
    else if (key == "half_life")
      s.generator.half_life = number(value, key);
    else if (key == "clearance_rate")
      s.generator.clearance_rate = number(value, key);
    else if (key == "duration")
      s.generator.duration = number(value, key);
    else if (key == "dt")
      s.generator.dt = number(value, key);
    else if (key == "warmup")
      s.generator.warmup = number(value, key);
    else if (key == "initial_level")
      s.generator.initial_level = number(value, key);
    else if (key == "sampling") {
      if (!value.is_object())
        throw InputError("'sampling' must be an object");
      for (const auto& [skey, sval] : value.items()) {
        if (skey == "period")
          s.sampling.period = number(sval, skey);
        else if (skey == "start_shift")
          s.sampling.start_shift = number(sval, skey);
        else if (skey == "time_jitter")
          s.sampling.time_jitter = number(sval, skey);
        else if (skey == "assay_noise")
          s.sampling.assay_noise = number(sval, skey);
        else if (skey == "seed" && sval.is_number_unsigned())
          s.sampling.seed = sval.get<std::uint64_t>();
        else if (skey == "count" && sval.is_number_unsigned())
          s.sampling.count = sval.get<std::size_t>();
        else
          throw InputError("unknown or invalid sampling key '" + skey + "'");
      }
    } else {
      throw InputError("unknown generator key '" + key + "'");
    }
  }
  return s;
}

lh::Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path.string() + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw InputError("'" + path.string() + "' is not valid JSON");
  return scenario_from_json(j);
}

} // namespace dynpeak::io
