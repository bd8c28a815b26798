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

#ifndef ENTGAMMA_BENCH_HPP_
#define ENTGAMMA_BENCH_HPP_

#include "entgamma/core.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entgamma::bench {

inline constexpr Index kSignalLength = 512;

enum class Rounding { kHalfAwayFromZero, kTruncate };

enum class Method { kAgtMe, kCab };

std::string_view method_name(Method method);

/// Evenly spaced grid start, start+step, ..., stop (inclusive), each value
/// snapped to 1e-9 so that e.g. 1.0 appears exactly.
std::vector<double> make_grid(double start, double stop, double step);

/// Parses "START:STOP:STEP".
std::vector<double> parse_grid(std::string_view spec);

/// The default bias grid 0.1, 0.2, ..., 3.0.
std::vector<double> default_bias_grid();

struct Signal1D {
  Eigen::ArrayXd samples;
  std::optional<std::vector<std::uint8_t>> quantized;
};

/// y(n) = 75/255 sin(2 pi 2n/64) - 55/255 sin(2 pi 1.3n/64) + 127/255,
/// n = 0..511. The sum slightly overshoots [0, 1] at its extremes.
Signal1D synth_signal();

/// Applies v = u^gamma_b to values clamped into [0, 1] and quantizes
/// to l = clamp(round(255 v), 0, 255).
std::vector<std::uint8_t> distort_quantize(std::span<const double> values, double gamma_b,
                                           Rounding rounding = Rounding::kHalfAwayFromZero);

double estimate_with(Method method, const NormalizedImage<double>& image);

/// Ratio of the two images' estimates, original over distorted.
double relative_gamma(const NormalizedImage<double>& original, const NormalizedImage<double>& distorted,
                      Method method = Method::kAgtMe);

struct MethodSweep {
  Method method = Method::kAgtMe;
  /// Recognized gamma per (image, bias gamma).
  Eigen::MatrixXd recognized;
  Eigen::VectorXd rmse_per_bias;
  double mean_rmse = 0.0;
};

struct FileError {
  std::string image_id;
  std::string message;
};

struct SweepResult {
  std::vector<double> bias_gammas;
  std::vector<std::string> image_ids;
  MethodSweep agt_me;
  MethodSweep cab;
  std::vector<FileError> errors;
};

enum class Pipeline {
  /// Distort (l/255)^gamma_b, requantize to 8 bits, renormalize.
  kQuantized,
  /// Apply gamma_b to the normalized intensities with no requantization.
  kContinuous,
};

struct SweepOptions {
  Pipeline pipeline = Pipeline::kQuantized;
  /// Leave the gamma_b = 1 column out of mean_rmse.
  bool exclude_identity_from_mean = true;
};

struct CorpusEntry {
  std::string id;
  GrayImage image;
};

SweepResult rmse_sweep(std::vector<CorpusEntry> corpus, std::span<const double> grid,
                       const SweepOptions& options = {});

/// Sweeps every .pgm file in `directory`. Unreadable files are recorded in
/// SweepResult::errors and skipped.
SweepResult rmse_sweep(const std::filesystem::path& directory, std::span<const double> grid,
                       const SweepOptions& options = {});

/// Long-format CSV: gamma_b,image_id,gamma_r,method.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

struct LossPoint {
  double gamma = 0.0;
  /// Change-of-variables prediction of the negative differential entropy.
  double predicted = 0.0;
  /// Negative differential entropy measured after quantizing to 8 bits.
  double quantized = 0.0;
};

std::vector<LossPoint> loss_curve(const Histogram256& hist, std::span<const double> grid);

/// Negative differential entropy, in bits, of the histogram obtained by
/// pushing every level through the 8-bit gamma lookup table.
double quantized_neg_entropy(const Histogram256& hist, double gamma);

/// Two-column CSV "gamma,loss".
void write_curve_csv(std::span<const double> gammas, std::span<const double> losses, std::ostream& out);

struct TimingRow {
  Index side = 0;
  double mean_ms = 0.0;
};

/// Mean wall-clock time of estimate_gamma on random side x side 8-bit
/// images, after one warm-up call per size.
std::vector<TimingRow> timing_run(std::span<const Index> sides, int repetitions, std::uint64_t seed = 1);

void write_timing_csv(std::span<const TimingRow> rows, std::ostream& out);

struct SpectrumBin {
  Index bin = 0;
  double power = 0.0;
};

/// |DFT|^2 of the mean-removed line for bins 0..floor(L/2).
std::vector<SpectrumBin> scanline_spectrum(std::span<const double> line);
std::vector<SpectrumBin> scanline_spectrum(std::span<const std::uint8_t> line);

struct SignalReport {
  double distortion_gamma = 1.5;
  Rounding rounding = Rounding::kTruncate;
  /// 1 / gamma* of the distorted signal alone.
  double agt_single = 0.0;
  /// gamma*(original) / gamma*(distorted).
  double agt_relative = 0.0;
  double cab_single = 0.0;
  double cab_relative = 0.0;
  std::vector<std::uint8_t> original_levels;
  std::vector<std::uint8_t> distorted_levels;
  /// Loss curves of the distorted signal over restoration gammas.
  std::vector<LossPoint> loss;
};

/// Distorts the synthetic signal with gamma 1.5 under 8-bit truncating
/// quantization and estimates the distortion with AGT-ME and CAB.
SignalReport signal_experiment(Rounding rounding = Rounding::kTruncate);

void write_signal_report(const SignalReport& report, std::ostream& out);

/// Shortest round-trip decimal representation of a double.
std::string full_precision(double value);

}  // namespace entgamma::bench

#endif  // ENTGAMMA_BENCH_HPP_
