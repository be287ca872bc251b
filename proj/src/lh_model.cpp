#include "dynpeak/lh_model.hpp"

#include "dynpeak/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace dynpeak::lh {

TimeFunction constant(double value) {
  return [value](double) { return value; };
}

TimeFunction polynomial(std::vector<double> coeffs) {
  return [c = std::move(coeffs)](double t) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
      acc = acc * t + *it;
    return acc;
  };
}

double GeneratorConfig::decay_rate() const { return std::numbers::ln2 / half_life; }

double GeneratorConfig::warmup_length() const {
  return warmup >= 0.0 ? warmup : spike_period(0.0);
}

namespace {

// Release rate without the [0, duration] restriction; the warm-up evaluates
// the spike train at negative times.
double release_unchecked(double t, const GeneratorConfig& cfg) {
  const double period = cfg.spike_period(t);
  if (!(period > 0.0))
    throw std::domain_error("spike period must be positive (t = " + std::to_string(t) + ")");
  const double phase = t - std::floor(t / period) * period;
  return cfg.spike_amplitude(t) * std::exp(-cfg.decay_rate() * phase);
}

// Grid index j maps to time (j - offset) * dt so that t = 0 and every integer
// multiple of dt are represented exactly.
struct Grid {
  std::size_t offset;
  std::size_t steps;
  double dt;
  double time(std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(offset)) * dt;
  }
};

Grid make_grid(const GeneratorConfig& cfg) {
  const auto offset = static_cast<std::size_t>(std::llround(cfg.warmup_length() / cfg.dt));
  const auto forward = static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt));
  return {offset, offset + forward, cfg.dt};
}

} // namespace

void validate(const GeneratorConfig& cfg) {
  if (!cfg.spike_amplitude || !cfg.spike_period)
    throw InputError("spike amplitude and period functions are required");
  if (!(cfg.half_life > 0.0))
    throw InputError("half_life must be > 0");
  if (!(cfg.clearance_rate > 0.0))
    throw InputError("clearance_rate must be > 0");
  if (!(cfg.duration > 0.0))
    throw InputError("duration must be > 0");
  if (!(cfg.dt > 0.0) || cfg.dt > cfg.half_life / 100.0)
    throw InputError("dt must be in (0, half_life / 100]");
  if (!(cfg.initial_level >= 0.0))
    throw InputError("initial_level must be >= 0");
  if (!(cfg.spike_period(0.0) > 0.0))
    throw InputError("spike period must be positive at t = 0");
  if (!(cfg.warmup_length() >= 0.0) || !std::isfinite(cfg.warmup_length()))
    throw InputError("warmup must be finite and >= 0");

  const Grid grid = make_grid(cfg);
  for (std::size_t j = 0; j <= grid.steps; ++j) {
    const double t = grid.time(j);
    if (!(cfg.spike_period(t) > 0.0))
      throw InputError("spike period must be positive on the simulated range (t = " +
                       std::to_string(t) + ")");
    if (!(cfg.spike_amplitude(t) >= 0.0))
      throw InputError("spike amplitude must be non-negative on the simulated range (t = " +
                       std::to_string(t) + ")");
  }
}

void validate(const SamplingConfig& cfg) {
  if (!(cfg.period > 0.0))
    throw InputError("sampling period must be > 0");
  if (!(cfg.start_shift >= 0.0) || cfg.start_shift > cfg.period)
    throw InputError("start_shift must lie in [0, period]");
  if (!(cfg.time_jitter >= 0.0) || !(cfg.time_jitter < cfg.period / 2.0))
    throw InputError("time_jitter must lie in [0, period / 2)");
  if (!(cfg.assay_noise >= 0.0) || !(cfg.assay_noise < 1.0))
    throw InputError("assay_noise must lie in [0, 1)");
}

double release_rate(double t, const GeneratorConfig& cfg) {
  if (!(t >= 0.0) || t > cfg.duration)
    throw std::out_of_range("release time outside [0, duration]");
  return release_unchecked(t, cfg);
}

DenseSolution integrate_plasma(const GeneratorConfig& cfg) {
  validate(cfg);
  const Grid grid = make_grid(cfg);
  const double decay = std::exp(-cfg.clearance_rate * cfg.dt);
  const double gain = -std::expm1(-cfg.clearance_rate * cfg.dt) / cfg.clearance_rate;

  DenseSolution sol;
  sol.times.resize(grid.steps + 1);
  sol.values.resize(grid.steps + 1);
  double level = cfg.initial_level;
  for (std::size_t j = 0; j <= grid.steps; ++j) {
    sol.times[j] = grid.time(j);
    sol.values[j] = level;
    if (j == grid.steps)
      break;
    const double mid = sol.times[j] + 0.5 * cfg.dt;
    level = level * decay + release_unchecked(mid, cfg) * gain;
  }
  return sol;
}

double DenseSolution::level_at(double t) const {
  if (times.empty() || !(t >= times.front()) || t > times.back())
    throw std::out_of_range("time " + std::to_string(t) + " outside the dense solution");
  auto hi = std::upper_bound(times.begin(), times.end(), t);
  if (hi == times.end())
    return values.back();
  const auto j = static_cast<std::size_t>(hi - times.begin());
  const double t0 = times[j - 1];
  const double t1 = times[j];
  const double w = (t - t0) / (t1 - t0);
  return values[j - 1] + w * (values[j] - values[j - 1]);
}

double periodic_plasma_level(double phase, double amplitude, double period,
                             double half_life, double clearance_rate) {
  if (!(period > 0.0) || !(half_life > 0.0) || !(clearance_rate > 0.0))
    throw std::domain_error("period, half_life and clearance_rate must be > 0");
  if (!(phase >= 0.0))
    throw std::domain_error("phase must be >= 0");
  const double k = std::numbers::ln2 / half_life;
  const double a = clearance_rate;
  if (std::abs(a - k) <= 1e-12 * a)
    throw std::domain_error("clearance rate equals the spike decay rate");
  const double s = std::fmod(phase, period);
  // L(s) = C e^{-ks} + (L0 - C) e^{-as} on each period, with L(P) = L(0).
  const double c = amplitude / (a - k);
  const double l0 = c * (std::exp(-k * period) - std::exp(-a * period)) /
                    -std::expm1(-a * period);
  return c * std::exp(-k * s) + (l0 - c) * std::exp(-a * s);
}

namespace {

// Uniform on the closed interval [0, 1] with 2^53 equally spaced outcomes.
double unit_closed(std::mt19937_64& rng) {
  constexpr double scale = 1.0 / static_cast<double>((std::uint64_t{1} << 53) - 1);
  return static_cast<double>(rng() >> 11) * scale;
}

} // namespace

TimeSeries sample_series(const DenseSolution& sol, const SamplingConfig& cfg) {
  validate(cfg);
  if (sol.times.empty())
    throw InputError("dense solution is empty");

  std::size_t count = cfg.count;
  if (count == 0) {
    const double span = sol.end() - cfg.time_jitter - cfg.start_shift;
    if (span < 0.0)
      throw InputError("dense solution ends before the first sample");
    count = static_cast<std::size_t>(std::floor(span / cfg.period + 1e-9)) + 1;
  }

  std::mt19937_64 rng(cfg.seed);
  TimeSeries out;
  out.times.reserve(count);
  out.values.reserve(count);
  std::vector<double> effective;
  effective.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = cfg.start_shift + cfg.period * static_cast<double>(i);
    // Both draws are taken unconditionally so a seed gives the same noise
    // pattern whatever f and b are.
    const double jitter = cfg.time_jitter * (2.0 * unit_closed(rng) - 1.0);
    const double assay = cfg.assay_noise * (2.0 * unit_closed(rng) - 1.0);
    const double tau = t + jitter;
    if (tau < sol.start() || tau > sol.end())
      throw InputError("effective sampling time " + std::to_string(tau) +
                       " outside the simulated range");
    out.times.push_back(t);
    out.values.push_back(sol.level_at(tau) * (1.0 + assay));
    effective.push_back(tau);
  }
  out.effective_times = std::move(effective);
  return out;
}

Scenario scenario(std::string_view name) {
  Scenario s;
  s.generator.spike_amplitude = constant(15.0);
  s.generator.spike_period = constant(100.0);
  s.generator.half_life = 20.0;
  s.generator.clearance_rate = 6.0;
  s.generator.duration = 1000.0;
  s.sampling.period = 10.0;
  s.sampling.seed = 1;

  auto set_sampling = [&](double r, double f, double b) {
    s.sampling.start_shift = r;
    s.sampling.time_jitter = f;
    s.sampling.assay_noise = b;
  };
  if (name == "A") {
    set_sampling(1.0, 0.0, 0.0);
  } else if (name == "B") {
    set_sampling(4.0, 0.0, 0.0);
  } else if (name == "C") {
    set_sampling(4.0, 1.5, 0.0);
  } else if (name == "D") {
    set_sampling(4.0, 1.5, 0.10);
  } else if (name == "E") {
    s.generator.spike_period = [](double t) { return 100.0 - t / 30.0; };
    set_sampling(1.0, 0.0, 0.0);
  } else if (name == "F") {
    s.generator.spike_amplitude = [](double t) { return 15.0 - 8.7e-3 * t; };
    s.generator.spike_period = [](double t) { return 100.0 - t / 30.0; };
    set_sampling(4.0, 2.0, 0.05);
  } else {
    throw InputError("unknown scenario '" + std::string(name) + "' (expected A to F)");
  }
  return s;
}

void write_dense_csv(std::ostream& out, const DenseSolution& sol) {
  out << "time_min,lh_ng_ml\n";
  char buf[64];
  for (std::size_t j = 0; j < sol.times.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.6g,%.6g\n", sol.times[j], sol.values[j]);
    out << buf;
  }
}

} // namespace dynpeak::lh
