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

#ifndef ENTGAMMA_IMAGEIO_HPP_
#define ENTGAMMA_IMAGEIO_HPP_

#include "entgamma/color.hpp"
#include "entgamma/core.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace entgamma::io {

/// Malformed file contents; `offset()` is the byte position of the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// File could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Image = std::variant<GrayImage, ColorImage>;

/// Binary PGM (P5) or PPM (P6), maxval 255. Header comments are accepted;
/// bytes after the payload are rejected.
Image decode_image(std::span<const std::uint8_t> bytes);

/// Header is written as "P5\n<w> <h>\n255\n" (P6 for color).
std::vector<std::uint8_t> encode_image(const Image& image);

Image read_image(const std::filesystem::path& path);
GrayImage read_gray(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames, so a failed write leaves
/// no partial file behind.
void write_image(const Image& image, const std::filesystem::path& path);

/// P5 file; nonzero levels are included.
MaskImage read_mask(const std::filesystem::path& path);
MaskImage decode_mask(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(std::span<const std::uint8_t> bytes, const std::filesystem::path& path);

}  // namespace entgamma::io

#endif  // ENTGAMMA_IMAGEIO_HPP_
