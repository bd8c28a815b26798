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

#include "entgamma/core.hpp"

#include <algorithm>
#include <numbers>

namespace entgamma {

MaskImage::MaskImage(Index width, Index height, std::vector<std::uint8_t> included)
    : width_(width), height_(height), included_(std::move(included)) {
  if (width < 0 || height < 0 || width * height != static_cast<Index>(included_.size())) {
    throw std::domain_error("mask flag count does not match width x height");
  }
  count_ = static_cast<Index>(
      std::count_if(included_.begin(), included_.end(), [](std::uint8_t f) { return f != 0; }));
}

MaskImage MaskImage::full(Index width, Index height) {
  return MaskImage(width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width * height), 1));
}

Histogram256::Histogram256(const Counts& counts) : counts_(counts) {
  for (auto c : counts_) total_ += c;
}

Histogram256 Histogram256::from_levels(std::span<const std::uint8_t> levels) {
  Histogram256 hist;
  for (auto l : levels) ++hist.counts_[l];
  hist.total_ = levels.size();
  return hist;
}

Histogram256 Histogram256::from_levels(std::span<const std::uint8_t> levels, const MaskImage& mask) {
  if (mask.size() != static_cast<Index>(levels.size())) {
    throw std::domain_error("mask size does not match level count");
  }
  Histogram256 hist;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (mask.included(static_cast<Index>(i))) hist.add(levels[i]);
  }
  return hist;
}

void Histogram256::add(int level, std::uint64_t n) {
  if (level < 0 || level >= kLevels) {
    throw std::domain_error("histogram level " + std::to_string(level) + " is outside [0,255]");
  }
  counts_[static_cast<std::size_t>(level)] += n;
  total_ += n;
}

double Histogram256::pdf(int level) const {
  return total_ == 0 ? 0.0
                     : static_cast<double>(counts_[static_cast<std::size_t>(level)]) /
                           static_cast<double>(total_);
}

Eigen::Array<double, kLevels, 1> Histogram256::pdf() const {
  Eigen::Array<double, kLevels, 1> p;
  for (int l = 0; l < kLevels; ++l) p[l] = pdf(l);
  return p;
}

double entropy_gain(double gamma) { return entropy_gain(gamma, gamma); }

double entropy_gain(double applied, double optimal) {
  detail::require_positive_gamma(applied);
  detail::require_positive_gamma(optimal);
  // H(G) - H(I) = log2(a) + (a - 1) E[log2 u], with E[ln u] = -1/o.
  return (std::log(applied) - (applied - 1.0) / optimal) / std::numbers::ln2;
}

int intensity_to_level(double u) {
  const long level = std::lround(u * kLevels - 0.5);
  return static_cast<int>(std::clamp<long>(level, 0, kLevels - 1));
}

namespace detail {

GammaEstimate raw_estimate(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::domain_error("estimated gamma is not finite and positive");
  }
  return GammaEstimate{gamma, Variant::kRaw, entropy_gain(gamma)};
}

}  // namespace detail

GammaEstimate estimate_gamma(const Histogram256& hist) {
  if (hist.total() == 0) {
    throw std::domain_error("cannot estimate gamma of an empty histogram");
  }
  double sum = 0.0;
  for (int l = 0; l < kLevels; ++l) {
    const auto c = hist.counts()[static_cast<std::size_t>(l)];
    if (c != 0) sum += static_cast<double>(c) * std::log(level_to_intensity(l));
  }
  return detail::raw_estimate(-static_cast<double>(hist.total()) / sum);
}

GammaEstimate estimate_gamma(const GrayImage& image) {
  if (static_cast<Index>(image.levels.size()) != image.size()) {
    throw std::domain_error("level count does not match width x height");
  }
  return estimate_gamma(Histogram256::from_levels(image.levels));
}

GammaEstimate visual_gamma(const GammaEstimate& estimate) {
  if (estimate.variant != Variant::kRaw) {
    throw std::domain_error("visual gamma requires a raw estimate");
  }
  const double applied = estimate.gamma / kDisplayGamma;
  return GammaEstimate{applied, Variant::kVisual, entropy_gain(applied, estimate.gamma)};
}

double shannon_entropy(const Histogram256& hist) {
  double h = 0.0;
  for (int l = 0; l < kLevels; ++l) {
    const double p = hist.pdf(l);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double differential_entropy(const Histogram256& hist) {
  double h = 0.0;
  for (int l = 0; l < kLevels; ++l) {
    const double p = hist.pdf(l);
    if (p > 0.0) h -= p * std::log2(p * kLevels);
  }
  return h;
}

double predicted_neg_entropy(const Histogram256& hist, double gamma) {
  detail::require_positive_gamma(gamma);
  if (hist.total() == 0) {
    throw std::domain_error("cannot evaluate entropy of an empty histogram");
  }
  const double log_gamma = std::log2(gamma);
  double j = 0.0;
  for (int l = 0; l < kLevels; ++l) {
    const double p = hist.pdf(l);
    if (p == 0.0) continue;
    const double density = p * kLevels;
    j += p * (std::log2(density) - log_gamma + (1.0 - gamma) * std::log2(level_to_intensity(l)));
  }
  return j;
}

GammaEstimate select_gamma(const NormalizedImage<double>& image, const CorrectionOptions& options) {
  const GammaEstimate optimal = options.mask ? estimate_gamma_masked(image, *options.mask)
                                             : estimate_gamma(image);
  if (options.gamma_override) {
    detail::require_positive_gamma(*options.gamma_override);
    return GammaEstimate{*options.gamma_override, Variant::kRaw,
                         entropy_gain(*options.gamma_override, optimal.gamma)};
  }
  return options.variant == Variant::kVisual ? visual_gamma(optimal) : optimal;
}

std::array<std::uint8_t, kLevels> gamma_lut(double gamma) {
  detail::require_positive_gamma(gamma);
  typename NormalizedImage<double>::Array u(kLevels);
  for (int l = 0; l < kLevels; ++l) u[l] = level_to_intensity(l);
  const auto mapped = denormalize(apply_gamma(NormalizedImage<double>(kLevels, 1, u), gamma));
  std::array<std::uint8_t, kLevels> lut{};
  std::copy(mapped.levels.begin(), mapped.levels.end(), lut.begin());
  return lut;
}

GrayCorrection correct_gray(const GrayImage& image, const CorrectionOptions& options) {
  const auto normalized = normalize(image);
  const GammaEstimate estimate = select_gamma(normalized, options);
  return GrayCorrection{denormalize(apply_gamma(normalized, estimate.gamma)), estimate};
}

}  // namespace entgamma
