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

#include <doctest.h>

#include <random>
#include <sstream>

#include "synthetic.hpp"
#include "vsoc/error.hpp"
#include "vsoc/extrapolation.hpp"
#include "vsoc/metrics.hpp"

using namespace vsoc;
using namespace vsoc::testing;

namespace {

MotionField uniform_field(int bx, int by, MotionVector v, int block = 16) {
  MotionField f(bx, by, MotionParams{block, 8});
  for (int y = 0; y < by; ++y)
    for (int x = 0; x < bx; ++x) f.at(x, y) = v;
  return f;
}

DetectionSet one_box(std::size_t frame, BoundingBox b, int label = 0, double score = 1.0) {
  return DetectionSet{frame, {{b, label, score}}};
}

}  // namespace

TEST_CASE("extrapolation window validation") {
  CHECK_THROWS_AS(ExtrapolationWindow(0), Error);
  CHECK(ExtrapolationWindow(3).is_anchor(6));
  CHECK_FALSE(ExtrapolationWindow(3).is_anchor(7));
}

TEST_CASE("aggregate_box_motion") {
  SUBCASE("uniform field") {
    const MotionField f = uniform_field(4, 4, {4, 2});
    CHECK(aggregate_box_motion(f, {3, 7, 40, 20}) == MotionVector{4, 2});
    CHECK(aggregate_box_motion(f, {0, 0, 2, 2}) == MotionVector{4, 2});
  }
  SUBCASE("mean over two interior centres") {
    MotionField f = uniform_field(4, 4, {9, 9});
    f.at(0, 0) = {2, 0};
    f.at(1, 0) = {4, 0};
    // centres at 8 and 24 horizontally, 8 vertically
    CHECK(aggregate_box_motion(f, {0, 0, 32, 16}) == MotionVector{3, 0});
  }
  SUBCASE("centre on the box edge is not inside") {
    MotionField f = uniform_field(4, 4, {0, 0});
    f.at(1, 0) = {6, 6};
    // box spans x in (8, 40): centre 8 sits on the edge, 24 is inside
    CHECK(aggregate_box_motion(f, {8, 0, 32, 16}) == MotionVector{6, 6});
  }
  SUBCASE("global fallback for a box between centres") {
    MotionField f = uniform_field(4, 4, {0, 0});
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 2; ++y) f.at(x, y) = {2, 2};
    CHECK(aggregate_box_motion(f, {10, 10, 8, 8}) == MotionVector{1, 1});
  }
  SUBCASE("rounding is half away from zero") {
    MotionField f = uniform_field(2, 1, {0, 0});
    f.at(0, 0) = {2, -2};
    f.at(1, 0) = {3, -3};
    CHECK(aggregate_box_motion(f, {0, 0, 32, 16}) == MotionVector{3, -3});
    f.at(0, 0) = {1, -1};
    f.at(1, 0) = {0, 0};
    CHECK(aggregate_box_motion(f, {0, 0, 32, 16}) == MotionVector{1, -1});
    MotionField g = uniform_field(3, 1, {0, 0});
    g.at(0, 0) = {1, -1};
    g.at(1, 0) = {1, -1};
    g.at(2, 0) = {2, -2};  // 4/3 -> 1
    CHECK(aggregate_box_motion(g, {0, 0, 48, 16}) == MotionVector{1, -1});
  }
}

TEST_CASE("extrapolate_detections") {
  const MotionField f = uniform_field(120, 67, {4, 2});
  const DetectionSet out = extrapolate_detections(one_box(5, {100, 100, 50, 50}, 3, 0.7), f, 1920, 1080);
  CHECK(out.frame_index == 6);
  REQUIRE(out.boxes.size() == 1);
  CHECK(out.boxes[0].box == BoundingBox{104, 102, 50, 50});
  CHECK(out.boxes[0].label == 3);
  CHECK(out.boxes[0].score == 0.7);

  const DetectionSet clamped = extrapolate_detections(one_box(0, {1868, 0, 50, 50}), uniform_field(120, 67, {20, 0}), 1920, 1080);
  CHECK(clamped.boxes[0].box == BoundingBox{1870, 0, 50, 50});

  const DetectionSet up_left = extrapolate_detections(one_box(0, {2, 1, 10, 10}), uniform_field(4, 4, {-8, -8}), 64, 64);
  CHECK(up_left.boxes[0].box == BoundingBox{0, 0, 10, 10});

  const DetectionSet empty = extrapolate_detections(DetectionSet{7, {}}, f, 1920, 1080);
  CHECK(empty.frame_index == 8);
  CHECK(empty.boxes.empty());
}

TEST_CASE("extrapolated boxes stay inside the frame") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> mv(-8, 8);
  for (int trial = 0; trial < 300; ++trial) {
    const int w = 64, h = 48;
    MotionField f(4, 3, MotionParams{16, 8});
    for (int y = 0; y < 3; ++y)
      for (int x = 0; x < 4; ++x) f.at(x, y) = {mv(rng), mv(rng)};
    const int bw = 1 + static_cast<int>(rng() % w), bh = 1 + static_cast<int>(rng() % h);
    const BoundingBox b{static_cast<int>(rng() % (w - bw + 1)), static_cast<int>(rng() % (h - bh + 1)), bw, bh};
    const BoundingBox o = extrapolate_detections(one_box(0, b), f, w, h).boxes[0].box;
    CHECK(o.w == bw);
    CHECK(o.h == bh);
    CHECK(o.x >= 0);
    CHECK(o.y >= 0);
    CHECK(o.x + o.w <= w);
    CHECK(o.y + o.h <= h);
  }
}

TEST_CASE("run_pipeline schedule") {
  const FrameSequence seq = static_sequence(32, 32, 10, 1);
  const DetectionTrack truth = moving_box_track(10, {4, 4, 8, 8}, 0, 0);

  SUBCASE("ew=1 replays the oracle") {
    DetectionTrack varied = moving_box_track(10, {1, 1, 5, 5}, 2, 1);
    varied[3].boxes.clear();
    DetectionOracle oracle(varied);
    const PipelineResult r = run_pipeline(seq, oracle, ExtrapolationWindow(1), MotionParams{});
    CHECK(r.per_frame_boxes == varied);
    CHECK(r.inference_frames.size() == 10);
    CHECK(oracle.inference_count() == 10);
  }
  SUBCASE("ew=2") {
    DetectionOracle oracle(truth);
    const PipelineResult r = run_pipeline(seq, oracle, ExtrapolationWindow(2), MotionParams{});
    CHECK(r.inference_frames == std::vector<std::size_t>{0, 2, 4, 6, 8});
    CHECK(oracle.inference_count() == 5);
    CHECK(r.per_frame_boxes == truth);  // static scene
  }
  SUBCASE("ew larger than sequence") {
    DetectionOracle oracle(truth);
    const PipelineResult r = run_pipeline(seq, oracle, ExtrapolationWindow(100), MotionParams{});
    CHECK(r.inference_frames == std::vector<std::size_t>{0});
    CHECK(r.per_frame_boxes == truth);
  }
  SUBCASE("short oracle") {
    DetectionOracle oracle(moving_box_track(9, {4, 4, 8, 8}, 0, 0));
    CHECK_THROWS_WITH_AS(run_pipeline(seq, oracle, ExtrapolationWindow(2), MotionParams{}),
                         "oracle/sequence length mismatch", Error);
  }
}

TEST_CASE("inference count law and box conservation") {
  const FrameSequence seq = static_sequence(16, 16, 40, 2);
  const MotionField zero = uniform_field(1, 1, {0, 0});
  const MotionFieldSource zero_source = [&](std::size_t) -> const MotionField& { return zero; };
  std::mt19937 rng(8);
  for (std::size_t n = 1; n <= 40; n += 3) {
    const FrameSequence prefix(std::vector<Frame>(seq.frames().begin(), seq.frames().begin() + n));
    DetectionTrack track = make_empty_track(n);
    for (auto& s : track)
      for (std::size_t k = rng() % 4; k > 0; --k) s.boxes.push_back({{1, 1, 4, 4}, 0, 1.0});
    for (int ew = 1; ew <= 12; ++ew) {
      DetectionOracle oracle(track);
      const PipelineResult r = run_pipeline(prefix, oracle, ExtrapolationWindow(ew), zero_source);
      CHECK(r.inference_frames.size() == (n + ew - 1) / ew);
      CHECK(oracle.inference_count() == r.inference_frames.size());
      for (std::size_t f = 0; f < n; ++f) {
        CHECK(r.per_frame_boxes[f].frame_index == f);
        if (f % ew != 0) CHECK(r.per_frame_boxes[f].boxes.size() == r.per_frame_boxes[f - 1].boxes.size());
      }
    }
  }
}

TEST_CASE("pure translation is tracked exactly") {
  const FrameSequence seq = translated_sequence(128, 96, 24, 3, -2, 77);
  const DetectionTrack truth = moving_box_track(24, {24, 60, 32, 24}, 3, -2);
  for (int ew : {1, 2, 5, 24}) {
    DetectionOracle oracle(truth);
    const PipelineResult r = run_pipeline(seq, oracle, ExtrapolationWindow(ew), MotionParams{});
    CHECK(r.per_frame_boxes == truth);
    CHECK(sequence_accuracy(r, truth).mean_iou == 1.0);
  }
}

TEST_CASE("motion field cache computes each field once") {
  const FrameSequence seq = translated_sequence(48, 48, 6, 1, 1, 5);
  MotionFieldCache cache(seq, {});
  const MotionField& a = cache.get(3);
  const MotionField& b = cache.get(3);
  CHECK(&a == &b);
  CHECK(cache.computed() == 1);
  CHECK_THROWS_AS(cache.get(0), Error);
  CHECK_THROWS_AS(cache.get(6), Error);
}

TEST_CASE("pipeline result CSV") {
  const FrameSequence seq = static_sequence(32, 32, 4, 1);
  DetectionOracle oracle(moving_box_track(4, {1, 2, 3, 4}, 0, 0));
  std::ostringstream out;
  write_pipeline_result(out, run_pipeline(seq, oracle, ExtrapolationWindow(2), MotionParams{}));
  CHECK(out.str() == "0,1,2,3,4,0,1\n1,1,2,3,4,0,1\n2,1,2,3,4,0,1\n3,1,2,3,4,0,1\n#inference_frames=0,2\n");
}
