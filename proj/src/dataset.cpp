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

#include "vsoc/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include <fmt/format.h>

#include "vsoc/error.hpp"

namespace vsoc {

namespace fs = std::filesystem;

Frame::Frame(int width, int height) : Frame(width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0))) {}

Frame::Frame(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1) throw validation_error("frame dimensions must be positive");
  if (pixels_.size() != static_cast<std::size_t>(width) * height)
    throw validation_error("pixel count does not match frame dimensions");
}

FrameSequence::FrameSequence(std::vector<Frame> frames) : frames_(std::move(frames)) {
  if (frames_.empty()) throw validation_error("empty frame sequence");
  for (const Frame& f : frames_) {
    if (f.width() != frames_.front().width() || f.height() != frames_.front().height())
      throw validation_error("inconsistent frame size");
  }
}

DetectionTrack make_empty_track(std::size_t frame_count) {
  DetectionTrack track(frame_count);
  for (std::size_t i = 0; i < frame_count; ++i) track[i].frame_index = i;
  return track;
}

namespace {

// Reads one whitespace-delimited header token, skipping `#` comments.
std::string next_header_token(std::istream& in) {
  std::string token;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      if (!token.empty()) return token;
    } else {
      token.push_back(static_cast<char>(c));
    }
    c = in.get();
  }
  return token;
}

int parse_header_int(std::istream& in, const fs::path& path) {
  const std::string token = next_header_token(in);
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw validation_error(fmt::format("unsupported format: bad PGM header in {}", path.string()));
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  for (auto& f : fields) {
    while (!f.empty() && std::isspace(static_cast<unsigned char>(f.front()))) f.remove_prefix(1);
    while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back()))) f.remove_suffix(1);
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
    throw validation_error(fmt::format("malformed annotation at line {}: '{}'", line_no, field));
  return value;
}

}  // namespace

Frame read_pgm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(fmt::format("cannot open {}", path.string()));

  if (next_header_token(in) != "P5") throw validation_error(fmt::format("unsupported format: {} is not binary PGM (P5)", path.string()));
  const int width = parse_header_int(in, path);
  const int height = parse_header_int(in, path);
  const int maxval = parse_header_int(in, path);
  if (maxval != 255) throw validation_error(fmt::format("unsupported format: maxval {} in {}", maxval, path.string()));
  if (width < 1 || height < 1) throw validation_error(fmt::format("unsupported format: bad dimensions in {}", path.string()));

  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height);
  in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(pixels.size()))
    throw io_error(fmt::format("truncated pixel data in {}", path.string()));
  return Frame(width, height, std::move(pixels));
}

void write_pgm(const fs::path& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(fmt::format("cannot write {}", path.string()));
  out << "P5\n" << frame.width() << ' ' << frame.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels().data()), static_cast<std::streamsize>(frame.pixels().size()));
  if (!out) throw io_error(fmt::format("cannot write {}", path.string()));
}

fs::path frame_file_name(std::size_t index) { return fmt::format("frame_{:06d}.pgm", index); }

FrameSequence load_frame_sequence(const fs::path& directory) {
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) throw io_error(fmt::format("not a directory: {}", directory.string()));

  std::map<std::size_t, fs::path> indexed;
  for (const auto& entry : fs::directory_iterator(directory)) {
    const std::string name = entry.path().filename().string();
    // frame_ + 6 digits + .pgm
    if (name.size() != 16 || !name.starts_with("frame_") || !name.ends_with(".pgm")) continue;
    std::size_t index = 0;
    const char* first = name.data() + 6;
    auto [ptr, err] = std::from_chars(first, first + 6, index);
    if (err != std::errc() || ptr != first + 6) continue;
    indexed.emplace(index, entry.path());
  }
  if (indexed.empty()) throw io_error(fmt::format("no frame files in {}", directory.string()));

  std::vector<Frame> frames;
  frames.reserve(indexed.size());
  std::size_t expected = 0;
  for (const auto& [index, path] : indexed) {
    if (index != expected) throw validation_error(fmt::format("non-contiguous sequence: missing frame {}", expected));
    frames.push_back(read_pgm(path));
    ++expected;
  }
  return FrameSequence(std::move(frames));
}

void write_frame_sequence(const fs::path& directory, const FrameSequence& seq) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw io_error(fmt::format("cannot create {}", directory.string()));
  for (std::size_t i = 0; i < seq.size(); ++i) write_pgm(directory / frame_file_name(i), seq[i]);
}

DetectionTrack parse_annotations(std::istream& in, std::size_t frame_count) {
  DetectionTrack track = make_empty_track(frame_count);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    const auto fields = split_fields(line);
    if (fields.size() < 5 || fields.size() > 7)
      throw validation_error(fmt::format("malformed annotation at line {}: expected 5 to 7 fields", line_no));

    const auto frame_index = parse_number<std::size_t>(fields[0], line_no);
    Detection det;
    det.box = {parse_number<int>(fields[1], line_no), parse_number<int>(fields[2], line_no),
               parse_number<int>(fields[3], line_no), parse_number<int>(fields[4], line_no)};
    if (fields.size() > 5) det.label = parse_number<int>(fields[5], line_no);
    if (fields.size() > 6) det.score = parse_number<double>(fields[6], line_no);

    if (det.box.w <= 0 || det.box.h <= 0) throw validation_error(fmt::format("degenerate box at line {}", line_no));
    if (det.box.x < 0 || det.box.y < 0) throw validation_error(fmt::format("negative box origin at line {}", line_no));
    if (frame_index >= frame_count)
      throw validation_error(fmt::format("index out of range at line {}: frame {} of {}", line_no, frame_index, frame_count));
    if (!(det.score >= 0.0 && det.score <= 1.0)) throw validation_error(fmt::format("invalid score at line {}", line_no));

    track[frame_index].boxes.push_back(det);
  }
  return track;
}

DetectionTrack parse_annotations(const fs::path& path, std::size_t frame_count) {
  std::ifstream in(path);
  if (!in) throw io_error(fmt::format("cannot open {}", path.string()));
  return parse_annotations(in, frame_count);
}

void write_annotations(std::ostream& out, const DetectionTrack& track) {
  for (const DetectionSet& set : track) {
    for (const Detection& d : set.boxes) {
      out << fmt::format("{},{},{},{},{},{},{}\n", set.frame_index, d.box.x, d.box.y, d.box.w, d.box.h, d.label, d.score);
    }
  }
}

BoundingBox polygon_to_box(const std::array<PolygonPoint, 4>& points) {
  // Zero-area hull: every point lies on the line through the first two distinct points.
  bool collinear = true;
  const PolygonPoint& p0 = points[0];
  for (std::size_t i = 1; i < points.size() && collinear; ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double cross = (points[i].x - p0.x) * (points[j].y - p0.y) - (points[i].y - p0.y) * (points[j].x - p0.x);
      if (cross != 0.0) {
        collinear = false;
        break;
      }
    }
  }
  if (collinear) throw validation_error("degenerate polygon");

  double min_x = points[0].x, max_x = points[0].x, min_y = points[0].y, max_y = points[0].y;
  for (const auto& p : points) {
    if (p.x < 0.0 || p.y < 0.0) throw validation_error("polygon point outside frame");
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const int x = static_cast<int>(std::floor(min_x));
  const int y = static_cast<int>(std::floor(min_y));
  return {x, y, static_cast<int>(std::ceil(max_x)) - x, static_cast<int>(std::ceil(max_y)) - y};
}

}  // namespace vsoc
