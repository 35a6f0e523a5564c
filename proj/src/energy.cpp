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

#include "vsoc/energy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "vsoc/error.hpp"

namespace vsoc {

namespace {

// Field table shared by the parser, writer and validator.
constexpr std::pair<const char*, double EnergyConfig::*> kFields[] = {
    {"e_sensor", &EnergyConfig::e_sensor},
    {"e_isp", &EnergyConfig::e_isp},
    {"e_nnx_inference", &EnergyConfig::e_nnx_inference},
    {"e_dram_per_byte", &EnergyConfig::e_dram_per_byte},
    {"e_acp_per_byte", &EnergyConfig::e_acp_per_byte},
    {"e_extrapolation", &EnergyConfig::e_extrapolation},
    {"e_static", &EnergyConfig::e_static},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double memory_energy(const EnergyConfig& cfg, const TrafficReport& traffic) {
  return static_cast<double>(traffic.total_dram_bytes) * cfg.e_dram_per_byte +
         static_cast<double>(traffic.total_acp_bytes) * cfg.e_acp_per_byte;
}

}  // namespace

void EnergyConfig::validate() const {
  for (const auto& [name, member] : kFields) {
    const double v = this->*member;
    if (!std::isfinite(v) || v < 0.0) throw validation_error(fmt::format("energy coefficient {} must be non-negative", name));
  }
  if (!(e_acp_per_byte < e_dram_per_byte) && !(e_acp_per_byte == 0.0 && e_dram_per_byte == 0.0))
    throw validation_error("e_acp_per_byte must be below e_dram_per_byte");
}

double frame_energy(const EnergyConfig& cfg, bool is_inference, const TrafficReport& traffic) {
  const double always = cfg.e_sensor + cfg.e_isp + cfg.e_static;
  if (!is_inference) return always + cfg.e_extrapolation;
  return always + cfg.e_nnx_inference + memory_energy(cfg, traffic);
}

double nnx_share(const EnergyConfig& cfg, const TrafficReport& traffic) {
  const double e = frame_energy(cfg, true, traffic);
  return e > 0.0 ? cfg.e_nnx_inference / e : 0.0;
}

EnergySummary sequence_energy(const EnergyConfig& cfg, const PipelineResult& result, const TrafficReport& traffic) {
  const std::size_t n = result.per_frame_boxes.size();
  std::vector<bool> inferred(n, false);
  for (std::size_t f : result.inference_frames) {
    if (f >= n) throw validation_error("inference frame outside the sequence");
    inferred[f] = true;
  }
  const auto n_inf = static_cast<double>(std::count(inferred.begin(), inferred.end(), true));
  const double n_ext = static_cast<double>(n) - n_inf;
  const double frames = static_cast<double>(n);

  EnergySummary s;
  auto& c = s.per_component;
  c["sensor"] = frames * cfg.e_sensor;
  c["isp"] = frames * cfg.e_isp;
  c["static"] = frames * cfg.e_static;
  c["nnx"] = n_inf * cfg.e_nnx_inference;
  c["dram"] = n_inf * static_cast<double>(traffic.total_dram_bytes) * cfg.e_dram_per_byte;
  c["acp"] = n_inf * static_cast<double>(traffic.total_acp_bytes) * cfg.e_acp_per_byte;
  c["extrapolation"] = n_ext * cfg.e_extrapolation;

  // Grouped by frame kind so an all-inference schedule reproduces the baseline bit-for-bit.
  s.total = n_inf * frame_energy(cfg, true, traffic) + n_ext * frame_energy(cfg, false, traffic);
  s.baseline_total = frames * frame_energy(cfg, true, traffic);
  s.saving_fraction = s.baseline_total > 0.0 ? 1.0 - s.total / s.baseline_total : 0.0;
  return s;
}

EnergyConfig parse_energy_config(std::istream& in) {
  EnergyConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw validation_error(fmt::format("energy config line {}: expected key = value", line_no));
    const std::string_view key = trim(text.substr(0, eq));
    const std::string_view value = trim(text.substr(eq + 1));

    double EnergyConfig::*member = nullptr;
    for (const auto& [name, m] : kFields) {
      if (key == name) member = m;
    }
    if (member == nullptr) throw validation_error(fmt::format("unknown energy config key '{}'", key));

    double parsed = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size())
      throw validation_error(fmt::format("energy config line {}: bad number '{}'", line_no, value));
    cfg.*member = parsed;
  }
  cfg.validate();
  return cfg;
}

EnergyConfig parse_energy_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error(fmt::format("cannot open {}", path.string()));
  return parse_energy_config(in);
}

void write_energy_config(std::ostream& out, const EnergyConfig& cfg) {
  for (const auto& [name, member] : kFields) out << fmt::format("{} = {}\n", name, cfg.*member);
}

}  // namespace vsoc
