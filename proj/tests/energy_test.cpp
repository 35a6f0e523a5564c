/*
 * Copyright 2026 The vsoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <limits>
#include <random>
#include <sstream>

#include "vsoc/energy.hpp"
#include "vsoc/error.hpp"

using namespace vsoc;

namespace {

PipelineResult schedule(std::size_t n, int ew) {
  PipelineResult r{make_empty_track(n), {}, ExtrapolationWindow(ew)};
  for (std::size_t f = 0; f < n; f += static_cast<std::size_t>(ew)) r.inference_frames.push_back(f);
  return r;
}

const TrafficReport& default_traffic() {
  static const TrafficReport t = simulate_network_traffic(default_network(), MemoryConfig{});
  return t;
}

}  // namespace

TEST_CASE("frame_energy under the default calibration") {
  const EnergyConfig cfg;
  CHECK(frame_energy(cfg, true, default_traffic()) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(frame_energy(cfg, false, default_traffic()) == 16.0);
  CHECK(nnx_share(cfg, default_traffic()) == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(nnx_share(cfg, default_traffic()) <= 0.5);

  const EnergyConfig zero{0, 0, 0, 0, 0, 0, 0};
  CHECK(frame_energy(zero, true, default_traffic()) == 0.0);
  CHECK(frame_energy(zero, false, default_traffic()) == 0.0);
}

TEST_CASE("sequence_energy savings") {
  const EnergyConfig cfg;
  const EnergySummary base = sequence_energy(cfg, schedule(100, 1), default_traffic());
  CHECK(base.saving_fraction == 0.0);
  CHECK(base.total == doctest::Approx(base.baseline_total));

  const EnergySummary ew2 = sequence_energy(cfg, schedule(100, 2), default_traffic());
  CHECK(ew2.saving_fraction == doctest::Approx(0.42).epsilon(1e-9));
  CHECK(ew2.total == doctest::Approx(5800.0));

  const EnergySummary far = sequence_energy(cfg, schedule(20000, 20000), default_traffic());
  CHECK(far.saving_fraction == doctest::Approx(0.84).epsilon(1e-4));
  CHECK(far.saving_fraction < 0.84);

  double sum = 0.0;
  for (const auto& [name, value] : ew2.per_component) sum += value;
  CHECK(sum == doctest::Approx(ew2.total).epsilon(1e-12));
  CHECK(ew2.per_component.at("nnx") == 50 * 45.0);
  CHECK(ew2.per_component.at("extrapolation") == 50.0);
}

TEST_CASE("closed form, linearity and monotonicity") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> coef(0.0, 20.0);
  TrafficReport traffic;
  traffic.total_dram_bytes = 3'000'000;
  traffic.total_acp_bytes = 9'000'000;
  for (int trial = 0; trial < 100; ++trial) {
    EnergyConfig cfg{coef(rng), coef(rng), coef(rng), 2e-6, 1e-7, coef(rng) * 0.1, coef(rng)};
    const std::size_t n = 1 + rng() % 150;
    const double e_inf = frame_energy(cfg, true, traffic);
    const double e_ext = frame_energy(cfg, false, traffic);
    // per-frame oracle, written out from the coefficients
    auto per_frame_sum = [&](int ew) {
      double sum = 0.0;
      for (std::size_t f = 0; f < n; ++f) {
        sum += cfg.e_sensor + cfg.e_isp + cfg.e_static;
        if (f % ew == 0)
          sum += cfg.e_nnx_inference + 3'000'000 * cfg.e_dram_per_byte + 9'000'000 * cfg.e_acp_per_byte;
        else
          sum += cfg.e_extrapolation;
      }
      return sum;
    };
    double previous = std::numeric_limits<double>::infinity();
    for (int ew = 1; ew <= 20; ++ew) {
      const EnergySummary s = sequence_energy(cfg, schedule(n, ew), traffic);
      const std::size_t n_inf = (n + ew - 1) / ew;
      CHECK(s.total == doctest::Approx(per_frame_sum(ew)).epsilon(1e-12));
      CHECK(s.total == doctest::Approx(n_inf * e_inf + (n - n_inf) * e_ext).epsilon(1e-12));
      if (ew == 1) CHECK(s.saving_fraction == 0.0);
      if (e_ext <= e_inf) CHECK(s.total <= previous * (1 + 1e-12));
      previous = s.total;

      EnergyConfig scaled = cfg;
      for (double* c : {&scaled.e_sensor, &scaled.e_isp, &scaled.e_nnx_inference, &scaled.e_dram_per_byte,
                        &scaled.e_acp_per_byte, &scaled.e_extrapolation, &scaled.e_static})
        *c *= 3.5;
      const EnergySummary t = sequence_energy(scaled, schedule(n, ew), traffic);
      CHECK(t.total == doctest::Approx(3.5 * s.total).epsilon(1e-12));
      CHECK(t.saving_fraction == doctest::Approx(s.saving_fraction).epsilon(1e-9));
    }
  }
}

TEST_CASE("energy config file") {
  std::istringstream defaults("# nothing overridden\n");
  const EnergyConfig d = parse_energy_config(defaults);
  CHECK(d.e_nnx_inference == 45.0);
  CHECK(d.e_dram_per_byte == 2e-6);

  std::istringstream some("e_sensor = 12.5\n  e_static=0\n");
  const EnergyConfig s = parse_energy_config(some);
  CHECK(s.e_sensor == 12.5);
  CHECK(s.e_static == 0.0);
  CHECK(s.e_isp == 4.0);

  std::ostringstream out;
  write_energy_config(out, s);
  std::istringstream back(out.str());
  const EnergyConfig r = parse_energy_config(back);
  CHECK(r.e_sensor == 12.5);
  CHECK(r.e_acp_per_byte == s.e_acp_per_byte);

  std::istringstream unknown("e_gpu = 3\n");
  CHECK_THROWS_WITH_AS(parse_energy_config(unknown), "unknown energy config key 'e_gpu'", Error);
  std::istringstream negative("e_isp = -1\n");
  CHECK_THROWS_AS(parse_energy_config(negative), Error);
  std::istringstream inverted("e_acp_per_byte = 1\ne_dram_per_byte = 0.5\n");
  CHECK_THROWS_AS(parse_energy_config(inverted), Error);
  std::istringstream junk("e_isp = four\n");
  CHECK_THROWS_AS(parse_energy_config(junk), Error);

  const EnergyConfig file = parse_energy_config(std::filesystem::path(VSOC_DATA_DIR) / "default_energy.cfg");
  CHECK(frame_energy(file, true, default_traffic()) == doctest::Approx(100.0).epsilon(1e-12));
}
