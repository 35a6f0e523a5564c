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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace vsoc {

using Bytes = std::uint64_t;

struct LayerSpec {
  std::string name;
  Bytes ofmap_bytes = 0;
  Bytes weight_bytes = 0;
  std::uint64_t macs = 0;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct NetworkSpec {
  std::vector<LayerSpec> layers;
  Bytes input_bytes = 0;

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

struct MemoryConfig {
  Bytes l3_bytes = 2'097'152;
  Bytes sram_bytes = 524'288;
  double acp_bw_bytes_per_s = 20e9;
  double fps = 60.0;

  void validate() const;
};

struct LayerTraffic {
  std::string name;
  Bytes acp_bytes = 0;
  Bytes dram_bytes = 0;

  friend bool operator==(const LayerTraffic&, const LayerTraffic&) = default;
};

struct TrafficReport {
  std::vector<LayerTraffic> per_layer;
  Bytes total_acp_bytes = 0;
  Bytes total_dram_bytes = 0;
};

/// Byte routing for one inference. Weights and the network input come from
/// DRAM. A non-final ofmap that fits the accelerator SRAM stays local;
/// otherwise it is written and read back, through the L3 over ACP when it fits
/// the L3 and through DRAM when it does not. The final ofmap is written once.
/// Input bytes are charged to the first layer.
TrafficReport simulate_network_traffic(const NetworkSpec& net, const MemoryConfig& cfg);

/// ACP bandwidth demanded at cfg.fps as a fraction of the port's capacity.
double acp_utilization(const TrafficReport& report, const MemoryConfig& cfg);

/// CSV with header `name,ofmap_bytes,weight_bytes,macs`. The network input
/// size is given by an optional `#input_bytes=N` line (default 0).
NetworkSpec parse_network(std::istream& in);
NetworkSpec parse_network(const std::filesystem::path& path);
void write_network(std::ostream& out, const NetworkSpec& net);

/// CSV `name,acp_bytes,dram_bytes`, then a `total` row.
void write_traffic_report(std::ostream& out, const TrafficReport& report);

/// 416x416 int8 single-shot detector shape used for the default energy
/// calibration.
NetworkSpec default_network();

}  // namespace vsoc
