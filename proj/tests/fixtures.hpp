#pragma once

// Synthetic series shared by the unit and acceptance tests.

#include "dynpeak/lh_model.hpp"
#include "dynpeak/time_series.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace fixtures {

/// Noise-free reference scenario `name` (A..F), sampled with its own settings.
dynpeak::TimeSeries scenario_series(const char* name);

/// 2000-min case-A series whose tenth spike (t in [900, 1000)) is released at
/// 15% of the nominal amplitude.
dynpeak::TimeSeries missed_pulse_series();

/// 2000-min case-A series sampled every 5 min with one sample, `offset`
/// samples after the tenth pulse, raised 0.5 ng/ml above its predecessor.
/// offset 5 is the quarter point of the 100-min period, 10 the midpoint.
dynpeak::TimeSeries spurious_peak_series(std::size_t offset);
inline constexpr std::size_t kSpuriousPulseIndex = 180;

/// Case-F generator (rising frequency, falling amplitude) sampled at `ts`
/// with r = 1, f = 0.15 ts, b = 0.05.
dynpeak::TimeSeries rising_frequency_series(double ts, std::uint64_t seed);

/// Random pulsatile series on a 10-min grid: decaying spikes at irregular
/// gaps plus uniform noise, 40 to 240 samples.
dynpeak::TimeSeries random_pulsatile_series(std::mt19937_64& rng);

/// Least-squares cubic in x = k + 1 - n/2 from the normal equations solved in
/// 50-digit arithmetic. Independent of the library's QR fit.
std::array<double, 4> oracle_cubic_fit(const std::vector<double>& y);

} // namespace fixtures
