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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "vsoc/extrapolation.hpp"
#include "vsoc/memory_traffic.hpp"

namespace vsoc {

/// Per-component energy coefficients in abstract units. The defaults give a
/// 100-unit inference frame for default_network() under MemoryConfig{}:
/// sensor 10, ISP 4, static 1, NNX 45, memory 40. An extrapolated frame
/// costs 16.
struct EnergyConfig {
  double e_sensor = 10.0;
  double e_isp = 4.0;
  double e_nnx_inference = 45.0;
  double e_dram_per_byte = 2e-6;
  double e_acp_per_byte = 2.5e-7;
  double e_extrapolation = 1.0;
  double e_static = 1.0;

  void validate() const;
};

struct EnergySummary {
  double total = 0.0;
  std::map<std::string, double> per_component;
  double baseline_total = 0.0;
  double saving_fraction = 0.0;
};

double frame_energy(const EnergyConfig& cfg, bool is_inference, const TrafficReport& traffic);

/// NNX energy as a share of an inference frame; the model expects <= 0.5.
double nnx_share(const EnergyConfig& cfg, const TrafficReport& traffic);

/// Per-frame summation over the pipeline schedule. The baseline is the same
/// sequence with an inference on every frame.
EnergySummary sequence_energy(const EnergyConfig& cfg, const PipelineResult& result, const TrafficReport& traffic);

/// `key = value` lines; `#` comments. Missing keys keep their defaults.
EnergyConfig parse_energy_config(std::istream& in);
EnergyConfig parse_energy_config(const std::filesystem::path& path);
void write_energy_config(std::ostream& out, const EnergyConfig& cfg);

}  // namespace vsoc
