#include "dynpeak/error.hpp"
#include "dynpeak/lh_model.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace dynpeak;
using doctest::Approx;

namespace {

lh::GeneratorConfig constant_case() {
  lh::GeneratorConfig g;
  g.spike_amplitude = lh::constant(15.0);
  g.spike_period = lh::constant(100.0);
  return g;
}

double phase_level(const lh::DenseSolution& sol, double phase) { return sol.level_at(500.0 + phase); }

} // namespace

TEST_SUITE("lh_model") {

TEST_CASE("release rate follows the spike train") {
  const auto g = constant_case();
  CHECK(lh::release_rate(0.0, g) == 15.0);
  CHECK(lh::release_rate(1.0, g) == Approx(15.0 * std::exp(-std::log(2.0) / 20.0)));
  CHECK(lh::release_rate(1.0, g) == Approx(14.489).epsilon(1e-4));
  CHECK(lh::release_rate(100.0, g) == 15.0);
  CHECK_THROWS_AS(lh::release_rate(-1.0, g), std::out_of_range);
  CHECK_THROWS_AS(lh::release_rate(g.duration + 1.0, g), std::out_of_range);
}

TEST_CASE("release stays within one spike's decay range") {
  const auto g = constant_case();
  const double lo = 15.0 * std::exp(-g.decay_rate() * 100.0);
  for (double t = 0.0; t <= 1000.0; t += 0.37) {
    const double r = lh::release_rate(t, g);
    REQUIRE(r <= 15.0);
    REQUIRE(r >= lo - 1e-12);
  }
}

TEST_CASE("plasma level reproduces the steady-state amplitudes") {
  const auto sol = lh::integrate_plasma(constant_case());
  CHECK(phase_level(sol, 1.0) == Approx(2.425).epsilon(0.005 / 2.425));
  CHECK(phase_level(sol, 4.0) == Approx(2.188).epsilon(0.005 / 2.188));
  CHECK(phase_level(sol, 91.0) == Approx(0.107).epsilon(0.002 / 0.107));
  CHECK(phase_level(sol, 94.0) == Approx(0.096).epsilon(0.002 / 0.096));
}

TEST_CASE("zero release decays exponentially") {
  lh::GeneratorConfig g;
  g.spike_amplitude = lh::constant(0.0);
  g.spike_period = lh::constant(100.0);
  g.warmup = 0.0;
  g.initial_level = 1.0;
  g.duration = 2.0;
  const auto sol = lh::integrate_plasma(g);
  for (double t : {0.0, 0.1, 0.5, 1.0, 2.0})
    CHECK(sol.level_at(t) == Approx(std::exp(-6.0 * t)).epsilon(1e-9));
}

TEST_CASE("closed-form periodic level") {
  CHECK(lh::periodic_plasma_level(4.0, 15.0, 100.0, 20.0, 6.0) == Approx(2.18903).epsilon(1e-5));
  CHECK(lh::periodic_plasma_level(1.0, 15.0, 100.0, 20.0, 6.0) == Approx(2.4228).epsilon(1e-4));
  CHECK(lh::periodic_plasma_level(104.0, 15.0, 100.0, 20.0, 6.0) ==
        Approx(lh::periodic_plasma_level(4.0, 15.0, 100.0, 20.0, 6.0)));
  for (double ph : {0.0, 3.0, 50.0, 99.0})
    CHECK(lh::periodic_plasma_level(ph, 0.0, 100.0, 20.0, 6.0) == 0.0);
  CHECK_THROWS_AS(lh::periodic_plasma_level(1.0, 15.0, 100.0, std::log(2.0) / 6.0, 6.0), std::domain_error);
}

TEST_CASE("integrator agrees with the closed form over a period") {
  const auto sol = lh::integrate_plasma(constant_case());
  double worst = 0.0;
  for (std::size_t j = 0; j < sol.times.size(); ++j) {
    const double t = sol.times[j];
    if (t < 300.0 || t > 400.0)
      continue;
    worst = std::max(worst, std::abs(sol.values[j] - lh::periodic_plasma_level(t, 15.0, 100.0, 20.0, 6.0)));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("dense solution covers warm-up and duration") {
  const auto sol = lh::integrate_plasma(constant_case());
  CHECK(sol.start() == Approx(-100.0));
  CHECK(sol.end() == Approx(1000.0));
  CHECK_THROWS_AS(sol.level_at(1000.5), std::out_of_range);
  std::ostringstream csv;
  lh::write_dense_csv(csv, sol);
  CHECK(csv.str().rfind("time_min,lh_ng_ml\n", 0) == 0);
}

TEST_CASE("noise-free sampling reads the dense solution") {
  const auto sc = lh::scenario("A");
  const auto sol = lh::integrate_plasma(sc.generator);
  const auto s = lh::sample_series(sol, sc.sampling);
  REQUIRE(s.size() == 100);
  CHECK(s.times.front() == 1.0);
  CHECK(s.times.back() == 991.0);
  for (std::size_t i = 0; i < s.size(); ++i)
    REQUIRE(s.values[i] == sol.level_at(s.times[i]));
  for (std::size_t i = 10; i < s.size(); ++i)
    REQUIRE(s.values[i] == Approx(s.values[i - 10]).epsilon(1e-9));
}

TEST_CASE("constant solution samples to the constant") {
  lh::DenseSolution sol;
  for (int j = 0; j <= 1000; ++j) {
    sol.times.push_back(j * 0.1);
    sol.values.push_back(1.25);
  }
  lh::SamplingConfig sc;
  sc.period = 1.0;
  const auto s = lh::sample_series(sol, sc);
  CHECK(s.size() == 100);
  for (double v : s.values)
    CHECK(v == 1.25);
}

TEST_CASE("sampling is deterministic per seed and varies across seeds") {
  const auto sc = lh::scenario("D");
  const auto sol = lh::integrate_plasma(sc.generator);
  const auto a = lh::sample_series(sol, sc.sampling);
  const auto b = lh::sample_series(sol, sc.sampling);
  CHECK(a.values == b.values);
  CHECK(*a.effective_times == *b.effective_times);

  auto other = sc.sampling;
  other.seed = sc.sampling.seed + 1;
  const auto c = lh::sample_series(sol, other);
  CHECK(a.values != c.values);

  const double peak = *std::max_element(sol.values.begin(), sol.values.end());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    other.seed = seed;
    const auto s = lh::sample_series(sol, other);
    REQUIRE(*std::max_element(s.values.begin(), s.values.end()) <= (1.0 + other.assay_noise) * peak);
  }
}

TEST_CASE("jitter moves effective times within bounds") {
  const auto sc = lh::scenario("C");
  const auto s = lh::sample_series(lh::integrate_plasma(sc.generator), sc.sampling);
  REQUIRE(s.effective_times);
  bool moved = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = (*s.effective_times)[i] - s.times[i];
    REQUIRE(std::abs(d) <= sc.sampling.time_jitter + 1e-12);
    moved = moved || d != 0.0;
  }
  CHECK(moved);
}

TEST_CASE("reference scenarios") {
  const auto a = lh::scenario("A");
  CHECK(a.generator.spike_amplitude(300.0) == 15.0);
  CHECK(a.generator.spike_period(300.0) == 100.0);
  CHECK(a.sampling.start_shift == 1.0);
  CHECK(a.sampling.time_jitter == 0.0);
  CHECK(a.sampling.assay_noise == 0.0);

  CHECK(lh::scenario("B").sampling.start_shift == 4.0);

  const auto f = lh::scenario("F");
  CHECK(f.generator.spike_amplitude(100.0) == Approx(15.0 - 8.7e-3 * 100.0));
  CHECK(f.generator.spike_period(300.0) == Approx(90.0));

  const auto e = lh::scenario("E");
  CHECK(e.sampling.start_shift == 1.0);
  CHECK(e.sampling.time_jitter == 0.0);
  CHECK(e.sampling.assay_noise == 0.0);

  CHECK_THROWS_AS(lh::scenario("G"), InputError);
}

TEST_CASE("configuration ranges are enforced") {
  auto g = constant_case();
  CHECK_NOTHROW(lh::validate(g));
  g.dt = 0.5;
  CHECK_THROWS_AS(lh::validate(g), InputError);
  g = constant_case();
  g.spike_period = lh::polynomial({10.0, -0.1});
  CHECK_THROWS_AS(lh::validate(g), InputError);
  g = constant_case();
  g.spike_amplitude = lh::constant(-1.0);
  CHECK_THROWS_AS(lh::validate(g), InputError);

  lh::SamplingConfig s;
  s.time_jitter = 5.0;
  CHECK_THROWS_AS(lh::validate(s), InputError);
  s = {};
  s.assay_noise = 1.0;
  CHECK_THROWS_AS(lh::validate(s), InputError);
  s = {};
  s.start_shift = 11.0;
  CHECK_THROWS_AS(lh::validate(s), InputError);
}

}
