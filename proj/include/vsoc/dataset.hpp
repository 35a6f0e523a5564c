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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace vsoc {

/// 8-bit luma plane, row-major.
class Frame {
 public:
  Frame(int width, int height);
  Frame(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  std::uint8_t at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t& at(int x, int y) { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }

  const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// Non-empty list of frames sharing one size.
class FrameSequence {
 public:
  explicit FrameSequence(std::vector<Frame> frames);

  std::size_t size() const noexcept { return frames_.size(); }
  int width() const noexcept { return frames_.front().width(); }
  int height() const noexcept { return frames_.front().height(); }

  const Frame& operator[](std::size_t i) const { return frames_[i]; }
  const std::vector<Frame>& frames() const noexcept { return frames_; }

 private:
  std::vector<Frame> frames_;
};

struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct Detection {
  BoundingBox box;
  int label = 0;
  double score = 1.0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct DetectionSet {
  std::size_t frame_index = 0;
  std::vector<Detection> boxes;

  friend bool operator==(const DetectionSet&, const DetectionSet&) = default;
};

/// One DetectionSet per frame; track[i].frame_index == i.
using DetectionTrack = std::vector<DetectionSet>;

DetectionTrack make_empty_track(std::size_t frame_count);

struct PolygonPoint {
  double x = 0.0;
  double y = 0.0;
};

Frame read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Frame& frame);

std::filesystem::path frame_file_name(std::size_t index);

/// Loads `frame_%06d.pgm` files from a directory.
FrameSequence load_frame_sequence(const std::filesystem::path& directory);
void write_frame_sequence(const std::filesystem::path& directory, const FrameSequence& seq);

/// CSV `frame_index,x,y,w,h[,label[,score]]`; `#` lines and blank lines are skipped.
DetectionTrack parse_annotations(std::istream& in, std::size_t frame_count);
DetectionTrack parse_annotations(const std::filesystem::path& path, std::size_t frame_count);

void write_annotations(std::ostream& out, const DetectionTrack& track);

/// Tightest axis-aligned box around a VOT-style 4-point polygon.
BoundingBox polygon_to_box(const std::array<PolygonPoint, 4>& points);

}  // namespace vsoc
