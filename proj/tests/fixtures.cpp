#include "fixtures.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <utility>

namespace fixtures {

using namespace dynpeak;

TimeSeries scenario_series(const char* name) {
  const auto sc = lh::scenario(name);
  return lh::sample_series(lh::integrate_plasma(sc.generator), sc.sampling);
}

TimeSeries missed_pulse_series() {
  auto sc = lh::scenario("A");
  sc.generator.duration = 2000.0;
  sc.generator.spike_amplitude = [](double t) { return t >= 900.0 && t < 1000.0 ? 15.0 * 0.15 : 15.0; };
  return lh::sample_series(lh::integrate_plasma(sc.generator), sc.sampling);
}

TimeSeries spurious_peak_series(std::size_t offset) {
  auto sc = lh::scenario("A");
  sc.generator.duration = 2000.0;
  sc.sampling.period = 5.0;
  TimeSeries s = lh::sample_series(lh::integrate_plasma(sc.generator), sc.sampling);
  const std::size_t i = kSpuriousPulseIndex + offset;
  s.values[i] = s.values[i - 1] + 0.5;
  return s;
}

TimeSeries rising_frequency_series(double ts, std::uint64_t seed) {
  const auto sc = lh::scenario("F");
  lh::SamplingConfig sampling;
  sampling.period = ts;
  sampling.start_shift = 1.0;
  sampling.time_jitter = 0.15 * ts;
  sampling.assay_noise = 0.05;
  sampling.seed = seed;
  return lh::sample_series(lh::integrate_plasma(sc.generator), sampling);
}

TimeSeries random_pulsatile_series(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(40, 240);
  std::uniform_int_distribution<int> gap(2, 14);
  std::uniform_real_distribution<double> amp(0.2, 3.0);
  std::uniform_real_distribution<double> noise(0.0, 0.3);
  std::uniform_real_distribution<double> decay(0.2, 0.9);
  TimeSeries s;
  s.values.assign(len(rng), 0.0);
  const double d = decay(rng);
  for (std::size_t i = static_cast<std::size_t>(gap(rng)) % 5; i < s.values.size();
       i += static_cast<std::size_t>(gap(rng))) {
    const double a = amp(rng);
    for (std::size_t j = i; j < s.values.size(); ++j)
      s.values[j] += a * std::pow(d, static_cast<double>(j - i));
  }
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    s.values[i] += noise(rng);
    s.times.push_back(10.0 * static_cast<double>(i));
  }
  return s;
}

std::array<double, 4> oracle_cubic_fit(const std::vector<double>& y) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const std::size_t n = y.size();
  const Big center = Big(n) / 2;
  std::array<std::array<Big, 5>, 4> m{};
  for (std::size_t k = 0; k < n; ++k) {
    const Big x = Big(k) + 1 - center;
    const std::array<Big, 4> p{Big(1), x, x * x, x * x * x};
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c)
        m[r][c] += p[r] * p[c];
      m[r][4] += p[r] * Big(y[k]);
    }
  }
  // Gauss-Jordan, partial pivoting.
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (abs(m[r][c]) > abs(m[piv][c]))
        piv = r;
    std::swap(m[c], m[piv]);
    for (int r = 0; r < 4; ++r) {
      if (r == c)
        continue;
      const Big f = m[r][c] / m[c][c];
      for (int j = c; j < 5; ++j)
        m[r][j] -= f * m[c][j];
    }
  }
  std::array<double, 4> out{};
  for (int r = 0; r < 4; ++r)
    out[r] = static_cast<double>(m[r][4] / m[r][r]);
  return out;
}

} // namespace fixtures
