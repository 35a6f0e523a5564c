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

#include "vsoc/extrapolation.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "vsoc/error.hpp"

namespace vsoc {

ExtrapolationWindow::ExtrapolationWindow(int ew) : ew_(ew) {
  if (ew < 1) throw validation_error(fmt::format("extrapolation window {} must be >= 1", ew));
}

const DetectionSet& DetectionOracle::infer(std::size_t frame_index) {
  if (frame_index >= track_.size()) throw validation_error("oracle/sequence length mismatch");
  ++inference_count_;
  return track_[frame_index];
}

namespace {

int round_mean(std::int64_t sum, std::int64_t count) {
  if (sum >= 0) return static_cast<int>((2 * sum + count) / (2 * count));
  return -static_cast<int>((-2 * sum + count) / (2 * count));
}

}  // namespace

MotionVector aggregate_box_motion(const MotionField& field, const BoundingBox& box) {
  const std::int64_t bs = field.params().block_size;
  std::int64_t sum_x = 0, sum_y = 0, count = 0;
  // Block centres sit at bx*bs + bs/2; compare in doubled coordinates to stay integral.
  for (int by = 0; by < field.blocks_y(); ++by) {
    const std::int64_t cy2 = 2 * by * bs + bs;
    if (!(cy2 > 2 * std::int64_t{box.y} && cy2 < 2 * (std::int64_t{box.y} + box.h))) continue;
    for (int bx = 0; bx < field.blocks_x(); ++bx) {
      const std::int64_t cx2 = 2 * bx * bs + bs;
      if (!(cx2 > 2 * std::int64_t{box.x} && cx2 < 2 * (std::int64_t{box.x} + box.w))) continue;
      sum_x += field.at(bx, by).dx;
      sum_y += field.at(bx, by).dy;
      ++count;
    }
  }
  if (count == 0) {
    for (const MotionVector& v : field.vectors()) {
      sum_x += v.dx;
      sum_y += v.dy;
    }
    count = static_cast<std::int64_t>(field.vectors().size());
    if (count == 0) return {};
  }
  return {round_mean(sum_x, count), round_mean(sum_y, count)};
}

DetectionSet extrapolate_detections(const DetectionSet& dets, const MotionField& field, int frame_w, int frame_h) {
  DetectionSet out;
  out.frame_index = dets.frame_index + 1;
  out.boxes.reserve(dets.boxes.size());
  for (const Detection& d : dets.boxes) {
    const MotionVector mv = aggregate_box_motion(field, d.box);
    Detection moved = d;
    moved.box.x = std::max(0, std::min(d.box.x + mv.dx, frame_w - d.box.w));
    moved.box.y = std::max(0, std::min(d.box.y + mv.dy, frame_h - d.box.h));
    out.boxes.push_back(moved);
  }
  return out;
}

PipelineResult run_pipeline(const FrameSequence& seq, DetectionOracle& oracle, ExtrapolationWindow ew,
                            const MotionFieldSource& fields) {
  if (oracle.track().size() < seq.size()) throw validation_error("oracle/sequence length mismatch");

  PipelineResult result{DetectionTrack{}, {}, ew};
  result.per_frame_boxes.reserve(seq.size());
  for (std::size_t f = 0; f < seq.size(); ++f) {
    if (ew.is_anchor(f)) {
      DetectionSet anchor = oracle.infer(f);
      anchor.frame_index = f;
      result.per_frame_boxes.push_back(std::move(anchor));
      result.inference_frames.push_back(f);
    } else {
      result.per_frame_boxes.push_back(
          extrapolate_detections(result.per_frame_boxes.back(), fields(f), seq.width(), seq.height()));
    }
  }
  return result;
}

PipelineResult run_pipeline(const FrameSequence& seq, DetectionOracle& oracle, ExtrapolationWindow ew,
                            const MotionParams& params) {
  MotionFieldCache cache(seq, params);
  return run_pipeline(seq, oracle, ew, cache.source());
}

MotionFieldCache::MotionFieldCache(const FrameSequence& seq, MotionParams params)
    : seq_(seq), params_(params), fields_(seq.size()) {
  params_.validate();
}

const MotionField& MotionFieldCache::get(std::size_t frame) {
  if (frame == 0 || frame >= seq_.size()) throw validation_error(fmt::format("no motion field for frame {}", frame));
  auto& slot = fields_[frame];
  if (!slot) slot = compute_motion_field(seq_[frame - 1], seq_[frame], params_);
  return *slot;
}

MotionFieldSource MotionFieldCache::source() {
  return [this](std::size_t frame) -> const MotionField& { return get(frame); };
}

std::size_t MotionFieldCache::computed() const noexcept {
  return static_cast<std::size_t>(std::count_if(fields_.begin(), fields_.end(), [](const auto& f) { return f.has_value(); }));
}

void write_pipeline_result(std::ostream& out, const PipelineResult& result) {
  write_annotations(out, result.per_frame_boxes);
  out << "#inference_frames=" << fmt::format("{}", fmt::join(result.inference_frames, ",")) << '\n';
}

}  // namespace vsoc
