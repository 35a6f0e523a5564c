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
#include <iosfwd>
#include <vector>

#include "vsoc/dataset.hpp"
#include "vsoc/extrapolation.hpp"

namespace vsoc {

struct FrameScore {
  std::size_t frame_index = 0;
  double mean_iou = 0.0;
  std::size_t matched = 0;
  std::size_t missed = 0;
  std::size_t spurious = 0;

  friend bool operator==(const FrameScore&, const FrameScore&) = default;
};

struct AccuracyReport {
  /// Mean over frames with at least one ground-truth box; 1.0 when there are none.
  double mean_iou = 1.0;
  std::size_t scored_frames = 0;
  std::vector<FrameScore> per_frame;

  bool vacuous() const noexcept { return scored_frames == 0; }
};

inline constexpr double kDefaultIouThreshold = 0.5;

double iou(const BoundingBox& a, const BoundingBox& b);

/// Greedy matching, highest IoU first; ties go to the lower prediction index,
/// then the lower truth index. Unmatched truth boxes contribute zero IoU.
FrameScore score_frame(const DetectionSet& pred, const DetectionSet& truth, double iou_threshold = kDefaultIouThreshold);

AccuracyReport sequence_accuracy(const PipelineResult& result, const DetectionTrack& truth,
                                 double iou_threshold = kDefaultIouThreshold);
AccuracyReport sequence_accuracy(const DetectionTrack& pred, const DetectionTrack& truth,
                                 double iou_threshold = kDefaultIouThreshold);

/// Percentage points of mean IoU lost relative to the every-frame baseline.
inline double accuracy_loss_pp(double baseline_mean_iou, double mean_iou) {
  return (baseline_mean_iou - mean_iou) * 100.0;
}

void write_accuracy_report(std::ostream& out, const AccuracyReport& report);

}  // namespace vsoc
