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

#include "vsoc/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>

#include <fmt/format.h>

#include "vsoc/error.hpp"

namespace vsoc {

namespace {

struct Overlap {
  std::int64_t inter = 0;
  std::int64_t uni = 1;
};

Overlap overlap(const BoundingBox& a, const BoundingBox& b) {
  if (a.w <= 0 || a.h <= 0 || b.w <= 0 || b.h <= 0) throw validation_error("degenerate box");
  const std::int64_t ix = std::max<std::int64_t>(0, std::min<std::int64_t>(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
  const std::int64_t iy = std::max<std::int64_t>(0, std::min<std::int64_t>(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
  const std::int64_t inter = ix * iy;
  const std::int64_t uni = std::int64_t{a.w} * a.h + std::int64_t{b.w} * b.h - inter;
  return {inter, uni};
}

struct Candidate {
  Overlap ov;
  std::size_t pred;
  std::size_t truth;
};

// Exact rational comparison: a.inter/a.uni > b.inter/b.uni.
bool greater_iou(const Overlap& a, const Overlap& b) { return a.inter * b.uni > b.inter * a.uni; }

}  // namespace

double iou(const BoundingBox& a, const BoundingBox& b) {
  const Overlap ov = overlap(a, b);
  return static_cast<double>(ov.inter) / static_cast<double>(ov.uni);
}

FrameScore score_frame(const DetectionSet& pred, const DetectionSet& truth, double iou_threshold) {
  if (pred.frame_index != truth.frame_index) throw validation_error("frame mismatch");
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) throw validation_error("iou threshold must lie in (0,1)");

  FrameScore score;
  score.frame_index = truth.frame_index;

  std::vector<Candidate> candidates;
  for (std::size_t p = 0; p < pred.boxes.size(); ++p) {
    for (std::size_t t = 0; t < truth.boxes.size(); ++t) {
      const Overlap ov = overlap(pred.boxes[p].box, truth.boxes[t].box);
      if (static_cast<double>(ov.inter) / static_cast<double>(ov.uni) >= iou_threshold) candidates.push_back({ov, p, t});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (greater_iou(a.ov, b.ov)) return true;
    if (greater_iou(b.ov, a.ov)) return false;
    return a.pred != b.pred ? a.pred < b.pred : a.truth < b.truth;
  });

  std::vector<bool> pred_used(pred.boxes.size(), false);
  std::vector<bool> truth_used(truth.boxes.size(), false);
  double iou_sum = 0.0;
  for (const Candidate& c : candidates) {
    if (pred_used[c.pred] || truth_used[c.truth]) continue;
    pred_used[c.pred] = truth_used[c.truth] = true;
    iou_sum += static_cast<double>(c.ov.inter) / static_cast<double>(c.ov.uni);
    ++score.matched;
  }
  score.missed = truth.boxes.size() - score.matched;
  score.spurious = pred.boxes.size() - score.matched;
  if (truth.boxes.empty()) {
    score.mean_iou = pred.boxes.empty() ? 1.0 : 0.0;
  } else {
    score.mean_iou = iou_sum / static_cast<double>(truth.boxes.size());
  }
  return score;
}

AccuracyReport sequence_accuracy(const DetectionTrack& pred, const DetectionTrack& truth, double iou_threshold) {
  if (pred.size() != truth.size()) throw validation_error("track length mismatch");
  AccuracyReport report;
  report.per_frame.reserve(truth.size());
  double sum = 0.0;
  for (std::size_t f = 0; f < truth.size(); ++f) {
    FrameScore s = score_frame(pred[f], truth[f], iou_threshold);
    if (!truth[f].boxes.empty()) {
      sum += s.mean_iou;
      ++report.scored_frames;
    }
    report.per_frame.push_back(s);
  }
  report.mean_iou = report.scored_frames == 0 ? 1.0 : sum / static_cast<double>(report.scored_frames);
  return report;
}

AccuracyReport sequence_accuracy(const PipelineResult& result, const DetectionTrack& truth, double iou_threshold) {
  return sequence_accuracy(result.per_frame_boxes, truth, iou_threshold);
}

void write_accuracy_report(std::ostream& out, const AccuracyReport& report) {
  out << "frame_index,mean_iou,matched,missed,spurious\n";
  for (const FrameScore& s : report.per_frame) {
    out << fmt::format("{},{:.6f},{},{},{}\n", s.frame_index, s.mean_iou, s.matched, s.missed, s.spurious);
  }
  out << fmt::format("#summary mean_iou={:.6f},scored_frames={}{}\n", report.mean_iou, report.scored_frames,
                     report.vacuous() ? ",vacuous=1" : "");
}

}  // namespace vsoc
