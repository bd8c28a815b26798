// Copyright 2026 The entgamma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entgamma/imageio.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>
#include <string_view>
#include <system_error>

namespace entgamma::io {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }

  void expect_magic(char* kind) {
    if (bytes_.size() < 2 || bytes_[0] != 'P') throw ParseError("missing P5/P6 magic", 0);
    if (bytes_[1] != '5' && bytes_[1] != '6') throw ParseError("unsupported magic", 1);
    *kind = static_cast<char>(bytes_[1]);
    pos_ = 2;
  }

  // Whitespace and '#' comments before a header field; at least one
  // whitespace byte is required.
  void skip_separator() {
    const std::size_t start = pos_;
    bool seen = false;
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (is_space(c)) {
        seen = true;
        ++pos_;
      } else {
        break;
      }
    }
    if (!seen) throw ParseError("expected whitespace", start);
  }

  long read_number(std::string_view field) {
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<int>::max()) {
        throw ParseError(std::string(field) + " is too large", start);
      }
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected " + std::string(field), start);
    return value;
  }

  void single_whitespace() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
      throw ParseError("expected single whitespace after maxval", pos_);
    }
    ++pos_;
  }

 private:
  static bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct Header {
  char kind;
  Index width;
  Index height;
  std::size_t payload_offset;
};

Header parse_header(std::span<const std::uint8_t> bytes) {
  HeaderReader reader(bytes);
  Header header{};
  reader.expect_magic(&header.kind);
  reader.skip_separator();
  const std::size_t width_at = reader.pos();
  header.width = reader.read_number("width");
  reader.skip_separator();
  const std::size_t height_at = reader.pos();
  header.height = reader.read_number("height");
  reader.skip_separator();
  const std::size_t maxval_at = reader.pos();
  const long maxval = reader.read_number("maxval");
  reader.single_whitespace();
  header.payload_offset = reader.pos();

  if (header.width == 0) throw ParseError("width must be positive", width_at);
  if (header.height == 0) throw ParseError("height must be positive", height_at);
  if (maxval != 255) throw ParseError("unsupported maxval " + std::to_string(maxval), maxval_at);

  const std::size_t channels = header.kind == '5' ? 1 : 3;
  const std::size_t expected = static_cast<std::size_t>(header.width) *
                               static_cast<std::size_t>(header.height) * channels;
  const std::size_t available = bytes.size() - header.payload_offset;
  if (available < expected) throw ParseError("truncated payload", bytes.size());
  if (available > expected) throw ParseError("trailing data after payload", header.payload_offset + expected);
  return header;
}

}  // namespace

Image decode_image(std::span<const std::uint8_t> bytes) {
  const Header header = parse_header(bytes);
  const auto payload = bytes.subspan(header.payload_offset);
  if (header.kind == '5') {
    return GrayImage{header.width, header.height, {payload.begin(), payload.end()}};
  }
  ColorImage color{header.width, header.height, {}};
  const std::size_t n = static_cast<std::size_t>(color.size());
  for (auto& plane : color.channels) plane.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < 3; ++c) color.channels[c][i] = payload[3 * i + c];
  }
  return color;
}

std::vector<std::uint8_t> encode_image(const Image& image) {
  const bool gray = std::holds_alternative<GrayImage>(image);
  const Index width = gray ? std::get<GrayImage>(image).width : std::get<ColorImage>(image).width;
  const Index height = gray ? std::get<GrayImage>(image).height : std::get<ColorImage>(image).height;
  if (width <= 0 || height <= 0) throw std::domain_error("cannot encode an empty image");

  const std::string header = std::string(gray ? "P5" : "P6") + "\n" + std::to_string(width) + " " +
                             std::to_string(height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  if (gray) {
    const auto& levels = std::get<GrayImage>(image).levels;
    if (static_cast<Index>(levels.size()) != width * height) {
      throw std::domain_error("level count does not match width x height");
    }
    out.insert(out.end(), levels.begin(), levels.end());
  } else {
    const auto& color = std::get<ColorImage>(image);
    const std::size_t n = static_cast<std::size_t>(color.size());
    for (const auto& plane : color.channels) {
      if (plane.size() != n) throw std::domain_error("color planes do not match width x height");
    }
    out.reserve(out.size() + 3 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& plane : color.channels) out.push_back(plane[i]);
    }
  }
  return out;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return bytes;
}

void write_bytes(std::span<const std::uint8_t> bytes, const std::filesystem::path& path) {
  std::filesystem::path temp = path;
  temp += ".partial";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(temp, ignored);
      throw IoError("failed writing '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(temp, ignored);
    throw IoError("cannot move output into place at '" + path.string() + "': " + ec.message());
  }
}

Image read_image(const std::filesystem::path& path) { return decode_image(read_bytes(path)); }

GrayImage read_gray(const std::filesystem::path& path) {
  Image image = read_image(path);
  if (!std::holds_alternative<GrayImage>(image)) throw ParseError("expected a P5 gray image", 0);
  return std::get<GrayImage>(std::move(image));
}

void write_image(const Image& image, const std::filesystem::path& path) {
  write_bytes(encode_image(image), path);
}

MaskImage decode_mask(std::span<const std::uint8_t> bytes) {
  Image image = decode_image(bytes);
  if (!std::holds_alternative<GrayImage>(image)) throw ParseError("mask must be a P5 image", 0);
  auto& gray = std::get<GrayImage>(image);
  for (auto& level : gray.levels) level = level != 0 ? 1 : 0;
  return MaskImage(gray.width, gray.height, std::move(gray.levels));
}

MaskImage read_mask(const std::filesystem::path& path) { return decode_mask(read_bytes(path)); }

}  // namespace entgamma::io
