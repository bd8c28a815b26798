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

#ifndef ENTGAMMA_CORE_HPP_
#define ENTGAMMA_CORE_HPP_

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entgamma {

using Index = Eigen::Index;

/// Number of quantization levels of an 8-bit image.
inline constexpr int kLevels = 256;

/// Exponent of the display encoding folded into the visual gamma.
inline constexpr double kDisplayGamma = 2.2;

enum class SourceDepth { kEightBit, kContinuous };

enum class Variant { kRaw, kVisual };

/// Row-major 8-bit gray image.
struct GrayImage {
  Index width = 0;
  Index height = 0;
  std::vector<std::uint8_t> levels;

  Index size() const { return width * height; }
  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

/// Pixel intensities mapped into the open interval (0, 1).
///
/// Every estimator operates on this type. Construction validates that each
/// intensity is finite and strictly inside (0, 1); the invariant is what
/// keeps ln(u) and 1/mean(ln u) finite downstream.
template <typename Scalar = double>
class NormalizedImage {
 public:
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  NormalizedImage() = default;

  NormalizedImage(Index width, Index height, Array intensities,
                  SourceDepth depth = SourceDepth::kContinuous)
      : width_(width), height_(height), intensities_(std::move(intensities)), depth_(depth) {
    if (width < 0 || height < 0 || width * height != intensities_.size()) {
      throw std::domain_error("intensity count does not match width x height");
    }
    for (Index i = 0; i < intensities_.size(); ++i) {
      const Scalar u = intensities_[i];
      if (!(u > Scalar(0) && u < Scalar(1))) {
        throw std::domain_error("intensity at index " + std::to_string(i) +
                                " is outside the open interval (0,1)");
      }
    }
  }

  Index width() const { return width_; }
  Index height() const { return height_; }
  Index size() const { return intensities_.size(); }
  bool empty() const { return intensities_.size() == 0; }
  const Array& intensities() const { return intensities_; }
  SourceDepth depth() const { return depth_; }

 private:
  Index width_ = 0;
  Index height_ = 0;
  Array intensities_;
  SourceDepth depth_ = SourceDepth::kContinuous;
};

/// Binary region-of-interest selector; nonzero entries are included.
class MaskImage {
 public:
  MaskImage() = default;
  MaskImage(Index width, Index height, std::vector<std::uint8_t> included);

  static MaskImage full(Index width, Index height);

  Index width() const { return width_; }
  Index height() const { return height_; }
  Index size() const { return static_cast<Index>(included_.size()); }
  /// Number of included pixels.
  Index count() const { return count_; }
  bool included(Index i) const { return included_[static_cast<std::size_t>(i)] != 0; }
  const std::vector<std::uint8_t>& flags() const { return included_; }

 private:
  Index width_ = 0;
  Index height_ = 0;
  std::vector<std::uint8_t> included_;
  Index count_ = 0;
};

/// 256-bin empirical distribution of 8-bit levels.
class Histogram256 {
 public:
  using Counts = std::array<std::uint64_t, kLevels>;

  Histogram256() = default;
  explicit Histogram256(const Counts& counts);

  static Histogram256 from_levels(std::span<const std::uint8_t> levels);
  static Histogram256 from_levels(std::span<const std::uint8_t> levels, const MaskImage& mask);

  void add(int level, std::uint64_t n = 1);

  const Counts& counts() const { return counts_; }
  std::uint64_t total() const { return total_; }
  double pdf(int level) const;
  Eigen::Array<double, kLevels, 1> pdf() const;

 private:
  Counts counts_{};
  std::uint64_t total_ = 0;
};

/// A restoration exponent together with the differential-entropy gain in
/// bits that applying it predicts.
struct GammaEstimate {
  double gamma = 1.0;
  Variant variant = Variant::kRaw;
  double entropy_gain_bits = 0.0;
};

/// Predicted differential-entropy increase, in bits, of applying `gamma`
/// to an image whose entropy-maximizing exponent is `gamma`:
/// (ln g + 1/g - 1) / ln 2. Zero only at g = 1, positive elsewhere.
double entropy_gain(double gamma);

/// Gain of applying exponent `applied` to an image whose maximizing exponent
/// is `optimal`: (ln a - (a - 1) / o) / ln 2. Negative when `applied` is far
/// enough from `optimal`.
double entropy_gain(double applied, double optimal);

/// Bin-center intensity of an 8-bit level, (l + 0.5) / 256.
constexpr double level_to_intensity(int level) { return (level + 0.5) / kLevels; }

/// Inverse of level_to_intensity with round-to-nearest and clamping.
int intensity_to_level(double u);

namespace detail {

/// Compensated (Neumaier) mean of ln(u) over the selected indices, visited in
/// ascending order. Both the masked and unmasked estimators go through here
/// so a full mask reproduces the unmasked result bit for bit.
template <typename Derived, typename Predicate>
double mean_log(const Eigen::ArrayBase<Derived>& u, Predicate&& selected, Index* selected_count) {
  double sum = 0.0;
  double compensation = 0.0;
  Index n = 0;
  const Index size = u.size();
  for (Index i = 0; i < size; ++i) {
    if (!selected(i)) continue;
    const double term = std::log(static_cast<double>(u.coeff(i)));
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
    ++n;
  }
  if (selected_count != nullptr) *selected_count = n;
  return n == 0 ? 0.0 : (sum + compensation) / static_cast<double>(n);
}

GammaEstimate raw_estimate(double gamma);

inline void require_positive_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::domain_error("gamma must be a finite positive number");
  }
}

}  // namespace detail

/// Entropy-maximizing restoration gamma, -1 / mean(ln u), over any array
/// expression of intensities in (0, 1).
template <typename Derived>
GammaEstimate estimate_gamma(const Eigen::ArrayBase<Derived>& intensities) {
  if (intensities.size() == 0) {
    throw std::domain_error("cannot estimate gamma of an empty image");
  }
  const double mean = detail::mean_log(intensities, [](Index) { return true; }, nullptr);
  return detail::raw_estimate(-1.0 / mean);
}

template <typename Scalar>
GammaEstimate estimate_gamma(const NormalizedImage<Scalar>& image) {
  return estimate_gamma(image.intensities());
}

/// Closed-form estimate from histogram counts at bin-center intensities.
GammaEstimate estimate_gamma(const Histogram256& hist);

/// Streaming estimate for 8-bit images: one counting pass, then the
/// closed form over 256 levels. Allocates nothing per pixel.
GammaEstimate estimate_gamma(const GrayImage& image);

/// Estimate restricted to the pixels selected by `mask`.
template <typename Scalar>
GammaEstimate estimate_gamma_masked(const NormalizedImage<Scalar>& image, const MaskImage& mask) {
  if (mask.width() != image.width() || mask.height() != image.height()) {
    throw std::domain_error("mask dimensions do not match image dimensions");
  }
  if (mask.count() == 0) {
    throw std::domain_error("mask selects no pixels");
  }
  const double mean = detail::mean_log(
      image.intensities(), [&mask](Index i) { return mask.included(i); }, nullptr);
  return detail::raw_estimate(-1.0 / mean);
}

/// Divides a raw estimate by the display gamma. The reported gain is that of
/// the exponent actually applied and can be negative.
GammaEstimate visual_gamma(const GammaEstimate& estimate);

/// Mean-brightness baseline: gamma such that mean(u)^gamma = 1/2.
template <typename Derived>
GammaEstimate cab_gamma(const Eigen::ArrayBase<Derived>& intensities) {
  if (intensities.size() == 0) {
    throw std::domain_error("cannot estimate gamma of an empty image");
  }
  const double mean = intensities.template cast<double>().mean();
  return detail::raw_estimate(std::log(0.5) / std::log(mean));
}

template <typename Scalar>
GammaEstimate cab_gamma(const NormalizedImage<Scalar>& image) {
  return cab_gamma(image.intensities());
}

/// Pixel-wise power law u^gamma. Results are clamped to the representable
/// open interval so the output is again a valid NormalizedImage.
template <typename Scalar>
NormalizedImage<Scalar> apply_gamma(const NormalizedImage<Scalar>& image, double gamma) {
  detail::require_positive_gamma(gamma);
  const Scalar lo = std::numeric_limits<Scalar>::min();
  const Scalar hi = Scalar(1) - std::numeric_limits<Scalar>::epsilon() / Scalar(2);
  typename NormalizedImage<Scalar>::Array out =
      image.intensities().pow(static_cast<Scalar>(gamma)).max(lo).min(hi);
  return NormalizedImage<Scalar>(image.width(), image.height(), std::move(out),
                                 gamma == 1.0 ? image.depth() : SourceDepth::kContinuous);
}

/// Maps 8-bit levels through (l + 0.5) / 256.
template <typename Scalar = double>
NormalizedImage<Scalar> normalize(const GrayImage& image) {
  if (static_cast<Index>(image.levels.size()) != image.size()) {
    throw std::domain_error("level count does not match width x height");
  }
  typename NormalizedImage<Scalar>::Array u(image.size());
  for (Index i = 0; i < image.size(); ++i) {
    u[i] = static_cast<Scalar>(level_to_intensity(image.levels[static_cast<std::size_t>(i)]));
  }
  return NormalizedImage<Scalar>(image.width, image.height, std::move(u), SourceDepth::kEightBit);
}

/// Checked variant for untrusted integer levels.
template <typename Scalar = double>
NormalizedImage<Scalar> normalize(std::span<const int> levels, Index width, Index height) {
  if (width * height != static_cast<Index>(levels.size())) {
    throw std::domain_error("level count does not match width x height");
  }
  typename NormalizedImage<Scalar>::Array u(static_cast<Index>(levels.size()));
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0 || levels[i] >= kLevels) {
      throw std::domain_error("level " + std::to_string(levels[i]) + " at index " +
                              std::to_string(i) + " is outside [0,255]");
    }
    u[static_cast<Index>(i)] = static_cast<Scalar>(level_to_intensity(levels[i]));
  }
  return NormalizedImage<Scalar>(width, height, std::move(u), SourceDepth::kEightBit);
}

template <typename Scalar>
GrayImage denormalize(const NormalizedImage<Scalar>& image) {
  GrayImage out{image.width(), image.height(), {}};
  out.levels.resize(static_cast<std::size_t>(image.size()));
  for (Index i = 0; i < image.size(); ++i) {
    out.levels[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(intensity_to_level(static_cast<double>(image.intensities()[i])));
  }
  return out;
}

/// Shannon entropy in bits over the 256 bins; empty bins contribute zero.
double shannon_entropy(const Histogram256& hist);

/// Differential entropy in bits of the piecewise-constant density p_l / (1/256);
/// identical to shannon_entropy(hist) - 8.
double differential_entropy(const Histogram256& hist);

/// Negative differential entropy, in bits, that the change-of-variables rule
/// predicts for the image after applying `gamma`, evaluated at bin centers.
/// Convex in gamma with its minimum at estimate_gamma(hist).gamma.
double predicted_neg_entropy(const Histogram256& hist, double gamma);

struct CorrectionOptions {
  Variant variant = Variant::kRaw;
  std::optional<MaskImage> mask;
  /// Exponent applied as-is instead of an estimate.
  std::optional<double> gamma_override;
};

struct GrayCorrection {
  GrayImage image;
  GammaEstimate estimate;
};

/// Normalize, estimate (masked if requested), optionally divide by the
/// display gamma, apply, and quantize back to levels.
GrayCorrection correct_gray(const GrayImage& image, const CorrectionOptions& options = {});

/// Exponent selection shared by the gray and color pipelines.
GammaEstimate select_gamma(const NormalizedImage<double>& image, const CorrectionOptions& options);

/// Applies the exponent to 8-bit levels through a 256-entry lookup table
/// built with the same normalize/power/denormalize path.
std::array<std::uint8_t, kLevels> gamma_lut(double gamma);

}  // namespace entgamma

#endif  // ENTGAMMA_CORE_HPP_
