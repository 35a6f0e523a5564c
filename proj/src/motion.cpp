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

#include "vsoc/motion.hpp"

#include <cstdlib>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "vsoc/error.hpp"

namespace vsoc {

void MotionParams::validate() const {
  if (block_size < 4) throw validation_error(fmt::format("block size {} below minimum 4", block_size));
  if (search_range < 1) throw validation_error(fmt::format("search range {} below minimum 1", search_range));
}

MotionField::MotionField(int blocks_x, int blocks_y, MotionParams params)
    : blocks_x_(blocks_x), blocks_y_(blocks_y), params_(params), vectors_(static_cast<std::size_t>(blocks_x) * blocks_y) {}

namespace {

bool window_inside(const Frame& f, int x, int y, int size) {
  return x >= 0 && y >= 0 && x + size <= f.width() && y + size <= f.height();
}

// SAD that gives up once the running sum exceeds `limit`; the returned value
// is then only known to be > limit.
std::uint64_t bounded_sad(const Frame& prev, const Frame& curr, int ox, int oy, int px, int py, int size,
                          std::uint64_t limit) {
  const auto* cur_data = curr.pixels().data();
  const auto* prev_data = prev.pixels().data();
  std::uint64_t sum = 0;
  for (int row = 0; row < size; ++row) {
    const auto* c = cur_data + static_cast<std::size_t>(oy + row) * curr.width() + ox;
    const auto* p = prev_data + static_cast<std::size_t>(py + row) * prev.width() + px;
    unsigned row_sum = 0;
    for (int col = 0; col < size; ++col) row_sum += static_cast<unsigned>(std::abs(int{c[col]} - int{p[col]}));
    sum += row_sum;
    if (sum > limit) return sum;
  }
  return sum;
}

}  // namespace

std::uint64_t block_sad(const Frame& prev, const Frame& curr, PixelPoint block_origin, MotionVector displacement,
                        int block_size) {
  const int px = block_origin.x - displacement.dx;
  const int py = block_origin.y - displacement.dy;
  if (!window_inside(curr, block_origin.x, block_origin.y, block_size) || !window_inside(prev, px, py, block_size))
    throw validation_error("displacement out of bounds");
  return bounded_sad(prev, curr, block_origin.x, block_origin.y, px, py, block_size,
                     std::numeric_limits<std::uint64_t>::max());
}

MotionField compute_motion_field(const Frame& prev, const Frame& curr, const MotionParams& params) {
  params.validate();
  if (prev.width() != curr.width() || prev.height() != curr.height()) throw validation_error("frame size mismatch");
  const int bs = params.block_size;
  if (curr.width() < bs || curr.height() < bs) throw validation_error("frame too small");

  MotionField field(curr.width() / bs, curr.height() / bs, params);
  const int range = params.search_range;

  for (int by = 0; by < field.blocks_y(); ++by) {
    for (int bx = 0; bx < field.blocks_x(); ++bx) {
      const int ox = bx * bs;
      const int oy = by * bs;
      std::uint64_t best_sad = std::numeric_limits<std::uint64_t>::max();
      int best_mag = 0;
      MotionVector best{};
      bool found = false;
      // Raster order over (dy, dx), so among equal (sad, magnitude) the
      // first candidate visited is the one kept.
      for (int dy = -range; dy <= range; ++dy) {
        for (int dx = -range; dx <= range; ++dx) {
          const int px = ox - dx;
          const int py = oy - dy;
          if (!window_inside(prev, px, py, bs)) continue;
          const std::uint64_t sad = bounded_sad(prev, curr, ox, oy, px, py, bs, best_sad);
          const int mag = dx * dx + dy * dy;
          if (!found || sad < best_sad || (sad == best_sad && mag < best_mag)) {
            best_sad = sad;
            best_mag = mag;
            best = {dx, dy};
            found = true;
          }
        }
      }
      field.at(bx, by) = best;
    }
  }
  return field;
}

void write_motion_field(std::ostream& out, const MotionField& field) {
  out << "block_x,block_y,dx,dy\n";
  for (int by = 0; by < field.blocks_y(); ++by) {
    for (int bx = 0; bx < field.blocks_x(); ++bx) {
      const MotionVector& v = field.at(bx, by);
      out << fmt::format("{},{},{},{}\n", bx, by, v.dx, v.dy);
    }
  }
}

}  // namespace vsoc
