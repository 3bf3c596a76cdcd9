/*
 * Copyright 2026 The Playtest Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace playtest {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Row-major packed RGB, 8 bits per channel.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, Rgb fill = {});

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }

  std::int64_t t_ms() const { return t_ms_; }
  void set_t_ms(std::int64_t t) { t_ms_ = t; }

  Rgb at(int x, int y) const {
    const std::size_t i = index(x, y);
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
  }
  void set(int x, int y, Rgb c) {
    const std::size_t i = index(x, y);
    pixels_[i] = c.r;
    pixels_[i + 1] = c.g;
    pixels_[i + 2] = c.b;
  }
  // r + g + b; proportional to the (r+g+b)/3 luma.
  int luma3(int x, int y) const {
    const std::size_t i = index(x, y);
    return pixels_[i] + pixels_[i + 1] + pixels_[i + 2];
  }

  const std::vector<std::uint8_t>& pixels() const { return pixels_; }
  std::vector<std::uint8_t>& pixels() { return pixels_; }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.pixels_ == b.pixels_;
  }

 private:
  std::size_t index(int x, int y) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
           3;
  }

  int width_ = 0;
  int height_ = 0;
  std::int64_t t_ms_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Binary PPM (P6, maxval 255).
std::string encode_ppm(const Frame& frame);
Frame decode_ppm(std::string_view bytes);
void write_ppm(const std::filesystem::path& path, const Frame& frame);
Frame read_ppm(const std::filesystem::path& path);

// FNV-1a over dimensions and pixels; used for golden-frame checks.
std::uint64_t frame_hash(const Frame& frame);

}  // namespace playtest
