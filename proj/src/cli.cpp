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

#include "vsoc/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vsoc/dataset.hpp"
#include "vsoc/energy.hpp"
#include "vsoc/error.hpp"
#include "vsoc/memory_traffic.hpp"
#include "vsoc/motion.hpp"
#include "vsoc/sweep.hpp"

namespace vsoc::cli {

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct RunOptions {
  std::string frames;
  std::string truth;
  std::string oracle;
  std::vector<int> ews;
  std::string network;
  std::string energy_config;
  Bytes mem_l3 = MemoryConfig{}.l3_bytes;
  Bytes mem_sram = MemoryConfig{}.sram_bytes;
  int block = MotionParams{}.block_size;
  int search = MotionParams{}.search_range;
  double iou_threshold = kDefaultIouThreshold;
  std::string out;
};

struct MvOptions {
  std::string prev;
  std::string curr;
  int block = MotionParams{}.block_size;
  int search = MotionParams{}.search_range;
  std::string out;
};

struct TrafficOptions {
  std::string network;
  Bytes l3 = MemoryConfig{}.l3_bytes;
  Bytes sram = MemoryConfig{}.sram_bytes;
  double fps = MemoryConfig{}.fps;
  double acp_bw = MemoryConfig{}.acp_bw_bytes_per_s;
  std::string out;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(fmt::format("cannot write output {}", path));
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw io_error(fmt::format("cannot write output {}", path));
}

void do_run(const RunOptions& o) {
  const FrameSequence seq = load_frame_sequence(o.frames);
  const DetectionTrack truth = parse_annotations(std::filesystem::path(o.truth), seq.size());
  const DetectionTrack oracle =
      o.oracle.empty() ? truth : parse_annotations(std::filesystem::path(o.oracle), seq.size());
  const NetworkSpec net = parse_network(std::filesystem::path(o.network));
  const EnergyConfig energy = parse_energy_config(std::filesystem::path(o.energy_config));

  MemoryConfig mem;
  mem.l3_bytes = o.mem_l3;
  mem.sram_bytes = o.mem_sram;

  const TrafficReport traffic = simulate_network_traffic(net, mem);
  if (nnx_share(energy, traffic) > 0.5)
    std::cerr << fmt::format("warning: NNX share of an inference frame is {:.3f}, above 0.5\n", nnx_share(energy, traffic));

  const SweepInputs inputs{seq, truth, oracle, net, mem, energy, MotionParams{o.block, o.search}, o.iou_threshold};
  emit_csv(run_sweep(inputs, o.ews), std::filesystem::path(o.out));
}

void do_mv(const MvOptions& o) {
  const Frame prev = read_pgm(o.prev);
  const Frame curr = read_pgm(o.curr);
  const MotionField field = compute_motion_field(prev, curr, MotionParams{o.block, o.search});
  std::ofstream out = open_output(o.out);
  write_motion_field(out, field);
  finish_output(out, o.out);
}

void do_traffic(const TrafficOptions& o) {
  const NetworkSpec net = parse_network(std::filesystem::path(o.network));
  MemoryConfig mem{o.l3, o.sram, o.acp_bw, o.fps};
  const TrafficReport report = simulate_network_traffic(net, mem);
  std::ofstream out = open_output(o.out);
  write_traffic_report(out, report);
  out << fmt::format("#acp_utilization={:.9f}\n", acp_utilization(report, mem));
  finish_output(out, o.out);
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Continuous-vision SoC simulator: motion-vector extrapolation, CNN memory traffic and energy sweeps"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "Sweep extrapolation windows and write the accuracy/energy CSV");
  run_cmd->add_option("--frames", run_opts.frames, "Directory of frame_%06d.pgm files")->required();
  run_cmd->add_option("--truth", run_opts.truth, "Ground-truth annotation CSV")->required();
  run_cmd->add_option("--oracle", run_opts.oracle, "Detections replayed at anchor frames (default: truth)");
  run_cmd->add_option("--ew", run_opts.ews, "Comma-separated extrapolation windows")->required()->delimiter(',');
  run_cmd->add_option("--network", run_opts.network, "Network layer CSV")->required();
  run_cmd->add_option("--energy-config", run_opts.energy_config, "Energy coefficients file")->required();
  run_cmd->add_option("--mem-l3", run_opts.mem_l3, "L3 capacity in bytes")->capture_default_str();
  run_cmd->add_option("--mem-sram", run_opts.mem_sram, "Accelerator SRAM in bytes")->capture_default_str();
  run_cmd->add_option("--block", run_opts.block, "Motion block size")->capture_default_str();
  run_cmd->add_option("--search", run_opts.search, "Motion search range")->capture_default_str();
  run_cmd->add_option("--iou-threshold", run_opts.iou_threshold, "Match threshold")->capture_default_str();
  run_cmd->add_option("--out", run_opts.out, "Output CSV")->required();

  MvOptions mv_opts;
  auto* mv_cmd = app.add_subcommand("mv", "Block-matching motion field between two PGM frames");
  mv_cmd->add_option("--prev", mv_opts.prev, "Previous frame (PGM)")->required();
  mv_cmd->add_option("--curr", mv_opts.curr, "Current frame (PGM)")->required();
  mv_cmd->add_option("--block", mv_opts.block, "Block size")->capture_default_str();
  mv_cmd->add_option("--search", mv_opts.search, "Search range")->capture_default_str();
  mv_cmd->add_option("--out", mv_opts.out, "Output CSV")->required();

  TrafficOptions traffic_opts;
  auto* traffic_cmd = app.add_subcommand("traffic", "Per-layer ACP/DRAM traffic for one inference");
  traffic_cmd->add_option("--network", traffic_opts.network, "Network layer CSV")->required();
  traffic_cmd->add_option("--l3", traffic_opts.l3, "L3 capacity in bytes")->capture_default_str();
  traffic_cmd->add_option("--sram", traffic_opts.sram, "Accelerator SRAM in bytes")->capture_default_str();
  traffic_cmd->add_option("--fps", traffic_opts.fps, "Frame rate")->capture_default_str();
  traffic_cmd->add_option("--acp-bw", traffic_opts.acp_bw, "ACP bandwidth in bytes/s")->capture_default_str();
  traffic_cmd->add_option("--out", traffic_opts.out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (run_cmd->parsed()) do_run(run_opts);
    if (mv_cmd->parsed()) do_mv(mv_opts);
    if (traffic_cmd->parsed()) do_traffic(traffic_opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Io ? kExitIo : kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"vsoc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace vsoc::cli
