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

#include "entgamma/color.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace entgamma {
namespace {

constexpr int kMaxLevel = kLevels - 1;

std::uint8_t to_level(double unit) {
  return static_cast<std::uint8_t>(std::clamp<long>(std::lround(unit * kMaxLevel), 0, kMaxLevel));
}

void require_valid(const ColorImage& image) {
  for (const auto& plane : image.channels) {
    if (static_cast<Index>(plane.size()) != image.size()) {
      throw std::domain_error("color planes do not match width x height");
    }
  }
}

double plane_entropy(const std::vector<std::uint8_t>& plane, const CorrectionOptions& options) {
  return shannon_entropy(options.mask ? Histogram256::from_levels(plane, *options.mask)
                                      : Histogram256::from_levels(plane));
}

std::vector<std::uint8_t> remap(const std::vector<std::uint8_t>& plane,
                                const std::array<std::uint8_t, kLevels>& lut) {
  std::vector<std::uint8_t> out(plane.size());
  std::transform(plane.begin(), plane.end(), out.begin(), [&lut](std::uint8_t l) { return lut[l]; });
  return out;
}

ColorCorrection correct_hsv_value(const ColorImage& image, const CorrectionOptions& options) {
  const Index n = image.size();
  std::vector<Hsv> hsv(static_cast<std::size_t>(n));
  GrayImage value{image.width, image.height, std::vector<std::uint8_t>(static_cast<std::size_t>(n))};
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    hsv[k] = rgb_to_hsv(pixel_at(image, i));
    value.levels[k] = to_level(hsv[k].v);
  }
  const GammaEstimate estimate = select_gamma(normalize(value), options);
  const auto lut = gamma_lut(estimate.gamma);

  ColorCorrection result{ColorImage{image.width, image.height, {}}, {estimate},
                         {plane_entropy(value.levels, options)}};
  for (auto& plane : result.image.channels) plane.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    Hsv corrected = hsv[k];
    corrected.v = static_cast<double>(lut[value.levels[k]]) / kMaxLevel;
    const Rgb rgb = hsv_to_rgb(corrected);
    for (int c = 0; c < 3; ++c) result.image.channels[static_cast<std::size_t>(c)][k] = rgb[static_cast<std::size_t>(c)];
  }
  return result;
}

ColorCorrection correct_gray_common(const ColorImage& image, const CorrectionOptions& options) {
  GrayImage gray{image.width, image.height, std::vector<std::uint8_t>(static_cast<std::size_t>(image.size()))};
  for (Index i = 0; i < image.size(); ++i) gray.levels[static_cast<std::size_t>(i)] = luma(pixel_at(image, i));
  const GammaEstimate estimate = select_gamma(normalize(gray), options);
  const auto lut = gamma_lut(estimate.gamma);
  ColorCorrection result{ColorImage{image.width, image.height, {}}, {estimate},
                         {plane_entropy(gray.levels, options)}};
  for (std::size_t c = 0; c < 3; ++c) result.image.channels[c] = remap(image.channels[c], lut);
  return result;
}

ColorCorrection correct_per_channel(const ColorImage& image, const CorrectionOptions& options) {
  ColorCorrection result{ColorImage{image.width, image.height, {}}, {}, {}};
  for (std::size_t c = 0; c < 3; ++c) {
    const GrayCorrection corrected =
        correct_gray(GrayImage{image.width, image.height, image.channels[c]}, options);
    result.image.channels[c] = corrected.image.levels;
    result.estimates.push_back(corrected.estimate);
    result.entropy_bits.push_back(plane_entropy(image.channels[c], options));
  }
  return result;
}

ColorCorrection correct_pooled(const ColorImage& image, const CorrectionOptions& options) {
  // The three planes are stacked vertically into one 3M-sample image.
  GrayImage stacked{image.width, image.height * 3, {}};
  stacked.levels.reserve(static_cast<std::size_t>(image.size() * 3));
  for (const auto& plane : image.channels) stacked.levels.insert(stacked.levels.end(), plane.begin(), plane.end());

  CorrectionOptions pooled = options;
  if (options.mask) {
    const MaskImage& mask = *options.mask;
    if (mask.width() != image.width || mask.height() != image.height) {
      throw std::domain_error("mask dimensions do not match image dimensions");
    }
    std::vector<std::uint8_t> tiled;
    tiled.reserve(stacked.levels.size());
    for (int c = 0; c < 3; ++c) tiled.insert(tiled.end(), mask.flags().begin(), mask.flags().end());
    pooled.mask = MaskImage(image.width, image.height * 3, std::move(tiled));
  }
  const GammaEstimate estimate = select_gamma(normalize(stacked), pooled);
  const auto lut = gamma_lut(estimate.gamma);
  ColorCorrection result{ColorImage{image.width, image.height, {}}, {estimate},
                         {plane_entropy(stacked.levels, pooled)}};
  for (std::size_t c = 0; c < 3; ++c) result.image.channels[c] = remap(image.channels[c], lut);
  return result;
}

}  // namespace

ChannelStrategy parse_strategy(std::string_view name) {
  if (name == "all-channels-pooled") return ChannelStrategy::kAllChannelsPooled;
  if (name == "gray-common-gamma") return ChannelStrategy::kGrayCommonGamma;
  if (name == "per-channel-independent") return ChannelStrategy::kPerChannelIndependent;
  if (name == "hsv-v-channel") return ChannelStrategy::kHsvValue;
  throw std::domain_error("unknown channel strategy '" + std::string(name) + "'");
}

std::string_view strategy_name(ChannelStrategy strategy) {
  switch (strategy) {
    case ChannelStrategy::kAllChannelsPooled: return "all-channels-pooled";
    case ChannelStrategy::kGrayCommonGamma: return "gray-common-gamma";
    case ChannelStrategy::kPerChannelIndependent: return "per-channel-independent";
    case ChannelStrategy::kHsvValue: return "hsv-v-channel";
  }
  return "unknown";
}

Hsv rgb_to_hsv(const Rgb& pixel) {
  const double r = pixel[0] / double(kMaxLevel);
  const double g = pixel[1] / double(kMaxLevel);
  const double b = pixel[2] / double(kMaxLevel);
  const int max_level = std::max({pixel[0], pixel[1], pixel[2]});
  const int min_level = std::min({pixel[0], pixel[1], pixel[2]});
  const double v = max_level / double(kMaxLevel);
  const double delta = (max_level - min_level) / double(kMaxLevel);

  Hsv hsv{0.0, max_level == 0 ? 0.0 : delta / v, v};
  if (max_level == min_level) return hsv;
  double h;
  if (max_level == pixel[0]) {
    h = 60.0 * ((g - b) / delta);
  } else if (max_level == pixel[1]) {
    h = 60.0 * ((b - r) / delta + 2.0);
  } else {
    h = 60.0 * ((r - g) / delta + 4.0);
  }
  if (h < 0.0) h += 360.0;
  hsv.h = h >= 360.0 ? 0.0 : h;
  return hsv;
}

std::array<double, 3> hsv_to_unit_rgb(const Hsv& hsv) {
  if (!(hsv.h >= 0.0 && hsv.h < 360.0) || !(hsv.s >= 0.0 && hsv.s <= 1.0) ||
      !(hsv.v >= 0.0 && hsv.v <= 1.0)) {
    throw std::domain_error("HSV components out of range");
  }
  const double c = hsv.v * hsv.s;
  const double sector = hsv.h / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(sector, 2.0) - 1.0));
  const double m = hsv.v - c;
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(sector)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  return {r + m, g + m, b + m};
}

Rgb hsv_to_rgb(const Hsv& hsv) {
  const auto unit = hsv_to_unit_rgb(hsv);
  return {to_level(unit[0]), to_level(unit[1]), to_level(unit[2])};
}

std::uint8_t luma(const Rgb& pixel) {
  return static_cast<std::uint8_t>((299 * pixel[0] + 587 * pixel[1] + 114 * pixel[2] + 500) / 1000);
}

Rgb pixel_at(const ColorImage& image, Index i) {
  const auto k = static_cast<std::size_t>(i);
  return {image.channels[0][k], image.channels[1][k], image.channels[2][k]};
}

ColorCorrection correct_color(const ColorImage& image, ChannelStrategy strategy,
                              const CorrectionOptions& options) {
  require_valid(image);
  switch (strategy) {
    case ChannelStrategy::kAllChannelsPooled: return correct_pooled(image, options);
    case ChannelStrategy::kGrayCommonGamma: return correct_gray_common(image, options);
    case ChannelStrategy::kPerChannelIndependent: return correct_per_channel(image, options);
    case ChannelStrategy::kHsvValue: return correct_hsv_value(image, options);
  }
  throw std::domain_error("unknown channel strategy");
}

}  // namespace entgamma
