#pragma once

#include "dynpeak/lh_model.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

namespace dynpeak::io {

/// Generator and sampling settings from JSON. Spike amplitude and period are
/// polynomials in time given as coefficient arrays (a bare number is a
/// constant):
///
///   {"spike_amplitude": [15, -0.0087], "spike_period": [100, -0.0333333],
///    "half_life": 20, "clearance_rate": 6, "duration": 1000, "dt": 0.01,
///    "sampling": {"period": 10, "start_shift": 4, "time_jitter": 2,
///                 "assay_noise": 0.05, "seed": 1}}
///
/// Missing keys keep their defaults; unknown keys are an InputError.
lh::Scenario scenario_from_json(const nlohmann::json& j);
lh::Scenario load_scenario(const std::filesystem::path& path);

} // namespace dynpeak::io
