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

#ifndef ENTGAMMA_COLOR_HPP_
#define ENTGAMMA_COLOR_HPP_

#include "entgamma/core.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace entgamma {

/// Planar 8-bit RGB image; channels are stored in R, G, B order.
struct ColorImage {
  Index width = 0;
  Index height = 0;
  std::array<std::vector<std::uint8_t>, 3> channels;

  Index size() const { return width * height; }
  friend bool operator==(const ColorImage&, const ColorImage&) = default;
};

using Rgb = std::array<std::uint8_t, 3>;

struct Hsv {
  double h = 0.0;  // degrees in [0, 360)
  double s = 0.0;
  double v = 0.0;
};

enum class ChannelStrategy { kAllChannelsPooled, kGrayCommonGamma, kPerChannelIndependent, kHsvValue };

inline constexpr ChannelStrategy kDefaultStrategy = ChannelStrategy::kHsvValue;

/// Accepts all-channels-pooled, gray-common-gamma, per-channel-independent
/// and hsv-v-channel.
ChannelStrategy parse_strategy(std::string_view name);
std::string_view strategy_name(ChannelStrategy strategy);

/// Hexcone conversion with V = max(R,G,B)/255; hue is 0 for achromatic pixels.
Hsv rgb_to_hsv(const Rgb& pixel);

/// Inverse hexcone conversion without quantization, components in [0, 1].
std::array<double, 3> hsv_to_unit_rgb(const Hsv& hsv);

/// Inverse hexcone conversion rounded to the nearest level.
Rgb hsv_to_rgb(const Hsv& hsv);

/// Integer luma (299 R + 587 G + 114 B) / 1000, rounded to nearest.
std::uint8_t luma(const Rgb& pixel);

Rgb pixel_at(const ColorImage& image, Index i);

struct ColorCorrection {
  ColorImage image;
  /// One estimate, or three (R, G, B) for per-channel-independent.
  std::vector<GammaEstimate> estimates;
  /// Shannon entropy of each plane the estimates were computed from.
  std::vector<double> entropy_bits;
};

/// Gamma correction of a color image under one of the four channel strategies.
ColorCorrection correct_color(const ColorImage& image, ChannelStrategy strategy,
                              const CorrectionOptions& options = {});

}  // namespace entgamma

#endif  // ENTGAMMA_COLOR_HPP_
