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

#include "playtest/image.hpp"

#include <cctype>
#include <fstream>
#include <iterator>

#include "playtest/errors.hpp"

namespace playtest {

Frame::Frame(int width, int height, Rgb fill)
    : width_(width),
      height_(height),
      pixels_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
              3) {
  if (width < 0 || height < 0) throw ImageError("negative frame size");
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

std::string encode_ppm(const Frame& frame) {
  std::string out = "P6\n" + std::to_string(frame.width()) + " " +
                    std::to_string(frame.height()) + "\n255\n";
  out.append(reinterpret_cast<const char*>(frame.pixels().data()),
             frame.pixels().size());
  return out;
}

Frame decode_ppm(std::string_view bytes) {
  std::size_t pos = 0;
  auto skip_ws_and_comments = [&] {
    while (pos < bytes.size()) {
      if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&] {
    skip_ws_and_comments();
    long v = 0;
    std::size_t digits = 0;
    while (pos < bytes.size() &&
           std::isdigit(static_cast<unsigned char>(bytes[pos])) && digits < 9) {
      v = v * 10 + (bytes[pos] - '0');
      ++pos;
      ++digits;
    }
    if (digits == 0) throw ImageError("bad PPM header");
    return static_cast<int>(v);
  };

  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    throw ImageError("not a binary PPM (P6)");
  }
  pos = 2;
  const int w = read_int();
  const int h = read_int();
  const int maxval = read_int();
  if (maxval != 255) throw ImageError("only maxval 255 is supported");
  if (pos >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw ImageError("bad PPM header");
  }
  ++pos;
  const std::size_t need =
      static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3;
  if (bytes.size() - pos < need) throw ImageError("truncated PPM data");

  Frame frame(w, h);
  std::copy(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
            bytes.begin() + static_cast<std::ptrdiff_t>(pos + need),
            frame.pixels().begin());
  return frame;
}

void write_ppm(const std::filesystem::path& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageError("cannot write " + path.string());
  const std::string data = encode_ppm(frame);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw ImageError("cannot write " + path.string());
}

Frame read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError("cannot read " + path.string());
  const std::string data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return decode_ppm(data);
}

std::uint64_t frame_hash(const Frame& frame) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (int v : {frame.width(), frame.height()}) {
    for (int s = 0; s < 32; s += 8) feed(static_cast<std::uint8_t>(v >> s));
  }
  for (std::uint8_t byte : frame.pixels()) feed(byte);
  return h;
}

}  // namespace playtest
