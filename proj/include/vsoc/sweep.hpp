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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "vsoc/dataset.hpp"
#include "vsoc/energy.hpp"
#include "vsoc/memory_traffic.hpp"
#include "vsoc/metrics.hpp"
#include "vsoc/motion.hpp"

namespace vsoc {

struct SweepRow {
  int ew = 1;
  std::size_t inferences = 0;
  double mean_iou = 0.0;
  double accuracy_loss_pp = 0.0;
  double energy_total = 0.0;
  double saving_fraction = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepInputs {
  const FrameSequence& seq;
  const DetectionTrack& truth;
  const DetectionTrack& oracle_track;
  const NetworkSpec& net;
  MemoryConfig mem_cfg;
  EnergyConfig energy_cfg;
  MotionParams motion;
  double iou_threshold = kDefaultIouThreshold;
};

/// One row per distinct window, ascending, always including the EW=1
/// baseline. Motion fields are computed once and shared between windows.
std::vector<SweepRow> run_sweep(const SweepInputs& in, const std::vector<int>& ews);

/// Header plus one row per entry sorted by window; fractions with 6 decimals.
void emit_csv(std::vector<SweepRow> rows, std::ostream& out);
void emit_csv(std::vector<SweepRow> rows, const std::filesystem::path& out_path);

}  // namespace vsoc
