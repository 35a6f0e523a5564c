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
#include <iosfwd>
#include <vector>

#include "vsoc/dataset.hpp"

namespace vsoc {

/// Forward displacement of image content from the previous frame to the
/// current one: a block at p in the current frame came from p - (dx, dy).
struct MotionVector {
  int dx = 0;
  int dy = 0;

  friend bool operator==(const MotionVector&, const MotionVector&) = default;
};

struct MotionParams {
  int block_size = 16;
  int search_range = 8;

  void validate() const;

  friend bool operator==(const MotionParams&, const MotionParams&) = default;
};

struct PixelPoint {
  int x = 0;
  int y = 0;
};

class MotionField {
 public:
  MotionField(int blocks_x, int blocks_y, MotionParams params);

  int blocks_x() const noexcept { return blocks_x_; }
  int blocks_y() const noexcept { return blocks_y_; }
  const MotionParams& params() const noexcept { return params_; }

  const MotionVector& at(int bx, int by) const { return vectors_[static_cast<std::size_t>(by) * blocks_x_ + bx]; }
  MotionVector& at(int bx, int by) { return vectors_[static_cast<std::size_t>(by) * blocks_x_ + bx]; }
  const std::vector<MotionVector>& vectors() const noexcept { return vectors_; }

  friend bool operator==(const MotionField&, const MotionField&) = default;

 private:
  int blocks_x_;
  int blocks_y_;
  MotionParams params_;
  std::vector<MotionVector> vectors_;
};

/// Sum of |curr[p] - prev[p - displacement]| over the block at `block_origin`.
/// Throws when either window leaves the frame.
std::uint64_t block_sad(const Frame& prev, const Frame& curr, PixelPoint block_origin, MotionVector displacement,
                        int block_size);

/// Exhaustive block matching. Candidates are ordered by SAD, then dx^2+dy^2,
/// then dy, then dx; out-of-bounds candidates are skipped.
MotionField compute_motion_field(const Frame& prev, const Frame& curr, const MotionParams& params);

/// CSV `block_x,block_y,dx,dy` with a header line.
void write_motion_field(std::ostream& out, const MotionField& field);

}  // namespace vsoc
