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

#include "vsoc/memory_traffic.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

#include "vsoc/error.hpp"

namespace vsoc {

void MemoryConfig::validate() const {
  if (l3_bytes == 0 || sram_bytes == 0) throw validation_error("memory capacities must be positive");
  if (!(acp_bw_bytes_per_s > 0.0) || !(fps > 0.0)) throw validation_error("ACP bandwidth and fps must be positive");
}

TrafficReport simulate_network_traffic(const NetworkSpec& net, const MemoryConfig& cfg) {
  cfg.validate();
  if (net.layers.empty()) throw validation_error("network has no layers");

  TrafficReport report;
  report.per_layer.reserve(net.layers.size());
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const LayerSpec& layer = net.layers[i];
    const bool final_layer = i + 1 == net.layers.size();
    LayerTraffic t{layer.name, 0, layer.weight_bytes};
    if (i == 0) t.dram_bytes += net.input_bytes;

    if (final_layer) {
      (layer.ofmap_bytes <= cfg.l3_bytes ? t.acp_bytes : t.dram_bytes) += layer.ofmap_bytes;
    } else if (layer.ofmap_bytes > cfg.sram_bytes) {
      (layer.ofmap_bytes <= cfg.l3_bytes ? t.acp_bytes : t.dram_bytes) += 2 * layer.ofmap_bytes;
    }

    report.total_acp_bytes += t.acp_bytes;
    report.total_dram_bytes += t.dram_bytes;
    report.per_layer.push_back(std::move(t));
  }
  return report;
}

double acp_utilization(const TrafficReport& report, const MemoryConfig& cfg) {
  return static_cast<double>(report.total_acp_bytes) * cfg.fps / cfg.acp_bw_bytes_per_s;
}

namespace {

std::uint64_t parse_u64(std::string_view s, std::size_t line_no) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw validation_error(fmt::format("malformed network file at line {}: '{}'", line_no, s));
  return v;
}

}  // namespace

NetworkSpec parse_network(std::istream& in) {
  NetworkSpec net;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.starts_with("#input_bytes=")) {
      net.input_bytes = parse_u64(std::string_view(line).substr(13), line_no);
      continue;
    }
    if (line.front() == '#') continue;
    if (!header_seen) {
      if (line != "name,ofmap_bytes,weight_bytes,macs")
        throw validation_error("network file must start with header name,ofmap_bytes,weight_bytes,macs");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t comma; (comma = rest.find(',')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, comma));
      rest.remove_prefix(comma + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 4 || fields[0].empty())
      throw validation_error(fmt::format("malformed network file at line {}: expected 4 fields", line_no));
    net.layers.push_back({std::string(fields[0]), parse_u64(fields[1], line_no), parse_u64(fields[2], line_no),
                          parse_u64(fields[3], line_no)});
  }
  if (!header_seen) throw validation_error("network file must start with header name,ofmap_bytes,weight_bytes,macs");
  if (net.layers.empty()) throw validation_error("network has no layers");
  return net;
}

NetworkSpec parse_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error(fmt::format("cannot open {}", path.string()));
  return parse_network(in);
}

void write_network(std::ostream& out, const NetworkSpec& net) {
  out << "name,ofmap_bytes,weight_bytes,macs\n";
  out << "#input_bytes=" << net.input_bytes << '\n';
  for (const LayerSpec& l : net.layers) out << fmt::format("{},{},{},{}\n", l.name, l.ofmap_bytes, l.weight_bytes, l.macs);
}

void write_traffic_report(std::ostream& out, const TrafficReport& report) {
  out << "name,acp_bytes,dram_bytes\n";
  for (const LayerTraffic& t : report.per_layer) out << fmt::format("{},{},{}\n", t.name, t.acp_bytes, t.dram_bytes);
  out << fmt::format("total,{},{}\n", report.total_acp_bytes, report.total_dram_bytes);
}

NetworkSpec default_network() {
  // int8 activations and weights. conv8 carries the remaining weight budget so
  // that DRAM + ACP/8 comes to exactly 20,000,000 bytes under MemoryConfig{}.
  auto conv = [](std::string name, Bytes h, Bytes w, Bytes c_in, Bytes c_out, Bytes k) {
    return LayerSpec{std::move(name), h * w * c_out, k * k * c_in * c_out, h * w * k * k * c_in * c_out};
  };
  auto pool = [](std::string name, Bytes h, Bytes w, Bytes c) { return LayerSpec{std::move(name), h * w * c, 0, h * w * c * 4}; };

  NetworkSpec net;
  net.input_bytes = 416 * 416 * 3;
  net.layers = {
      conv("conv1", 416, 416, 3, 16, 3),    pool("pool1", 208, 208, 16),        conv("conv2", 208, 208, 16, 32, 3),
      pool("pool2", 104, 104, 32),          conv("conv3", 104, 104, 32, 64, 3), pool("pool3", 52, 52, 64),
      conv("conv4", 52, 52, 64, 128, 3),    pool("pool4", 26, 26, 128),         conv("conv5", 26, 26, 128, 256, 3),
      pool("pool5", 13, 13, 256),           conv("conv6", 13, 13, 256, 512, 3), conv("conv7", 13, 13, 512, 1024, 3),
      LayerSpec{"conv8", 13 * 13 * 512, 6'892'224, 13 * 13 * 6'892'224}, conv("detect", 13, 13, 512, 128, 1),
  };
  return net;
}

}  // namespace vsoc
