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
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "vsoc/dataset.hpp"
#include "vsoc/motion.hpp"

namespace vsoc {

/// Frames covered by one detector inference. 1 means infer on every frame.
class ExtrapolationWindow {
 public:
  explicit ExtrapolationWindow(int ew);

  int value() const noexcept { return ew_; }
  bool is_anchor(std::size_t frame) const noexcept { return frame % static_cast<std::size_t>(ew_) == 0; }

  friend bool operator==(const ExtrapolationWindow&, const ExtrapolationWindow&) = default;

 private:
  int ew_;
};

/// Replays a recorded track in place of running a detector network, counting
/// every query as one inference.
class DetectionOracle {
 public:
  explicit DetectionOracle(DetectionTrack track) : track_(std::move(track)) {}

  const DetectionSet& infer(std::size_t frame_index);

  std::size_t inference_count() const noexcept { return inference_count_; }
  const DetectionTrack& track() const noexcept { return track_; }

 private:
  DetectionTrack track_;
  std::size_t inference_count_ = 0;
};

struct PipelineResult {
  DetectionTrack per_frame_boxes;
  std::vector<std::size_t> inference_frames;
  ExtrapolationWindow ew;
};

/// Supplies the field between frame f-1 and frame f. Lets sweeps reuse fields
/// across windows.
using MotionFieldSource = std::function<const MotionField&(std::size_t frame)>;

/// Rounded mean of the vectors of blocks whose centres lie strictly inside the
/// box, falling back to the whole-field mean when none do. Rounds half away
/// from zero.
MotionVector aggregate_box_motion(const MotionField& field, const BoundingBox& box);

/// Translates each box by its aggregate motion and shifts it back inside the
/// frame without resizing it.
DetectionSet extrapolate_detections(const DetectionSet& dets, const MotionField& field, int frame_w, int frame_h);

PipelineResult run_pipeline(const FrameSequence& seq, DetectionOracle& oracle, ExtrapolationWindow ew,
                            const MotionParams& params);
PipelineResult run_pipeline(const FrameSequence& seq, DetectionOracle& oracle, ExtrapolationWindow ew,
                            const MotionFieldSource& fields);

/// Lazily computes and memoises frame-to-frame fields for one sequence.
class MotionFieldCache {
 public:
  MotionFieldCache(const FrameSequence& seq, MotionParams params);

  const MotionField& get(std::size_t frame);
  MotionFieldSource source();

  std::size_t computed() const noexcept;

 private:
  const FrameSequence& seq_;
  MotionParams params_;
  std::vector<std::optional<MotionField>> fields_;
};

/// Annotation CSV followed by `#inference_frames=0,2,...`.
void write_pipeline_result(std::ostream& out, const PipelineResult& result);

}  // namespace vsoc
