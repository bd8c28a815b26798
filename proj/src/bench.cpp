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

#include "entgamma/bench.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "entgamma/imageio.hpp"

namespace entgamma::bench {
namespace {

constexpr double kMaxLevel = kLevels - 1;

bool is_identity(double gamma) { return std::abs(gamma - 1.0) < 1e-12; }

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::domain_error("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

NormalizedImage<double> normalize_levels(std::vector<std::uint8_t> levels) {
  const auto n = static_cast<Index>(levels.size());
  return normalize(GrayImage{n, 1, std::move(levels)});
}

MethodSweep aggregate(Method method, Eigen::MatrixXd recognized, std::span<const double> grid,
                      bool exclude_identity) {
  MethodSweep sweep{method, std::move(recognized), Eigen::VectorXd(static_cast<Index>(grid.size())), 0.0};
  const Index images = sweep.recognized.rows();
  double total = 0.0;
  Index counted = 0;
  for (Index b = 0; b < sweep.rmse_per_bias.size(); ++b) {
    const double bias = grid[static_cast<std::size_t>(b)];
    double sum = 0.0;
    for (Index k = 0; k < images; ++k) {
      const double err = sweep.recognized(k, b) - bias;
      sum += err * err;
    }
    sweep.rmse_per_bias[b] = std::sqrt(sum / static_cast<double>(images));
    if (!(exclude_identity && is_identity(bias))) {
      total += sweep.rmse_per_bias[b];
      ++counted;
    }
  }
  sweep.mean_rmse = counted == 0 ? 0.0 : total / static_cast<double>(counted);
  return sweep;
}

}  // namespace

std::string_view method_name(Method method) {
  return method == Method::kAgtMe ? "agt-me" : "cab";
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
    throw std::domain_error("grid needs finite start <= stop and a positive step");
  }
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9);
  }
  return grid;
}

std::vector<double> parse_grid(std::string_view spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string_view::npos ? first : spec.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw std::domain_error("grid must look like START:STOP:STEP");
  }
  return make_grid(parse_double(spec.substr(0, first)),
                   parse_double(spec.substr(first + 1, second - first - 1)),
                   parse_double(spec.substr(second + 1)));
}

std::vector<double> default_bias_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 30; ++k) grid.push_back(k / 10.0);
  return grid;
}

Signal1D synth_signal() {
  Signal1D signal{Eigen::ArrayXd(kSignalLength), std::nullopt};
  for (Index n = 0; n < kSignalLength; ++n) {
    const double x = static_cast<double>(n);
    signal.samples[n] = 75.0 / 255.0 * std::sin(2.0 * std::numbers::pi * 2.0 * x / 64.0) -
                        55.0 / 255.0 * std::sin(2.0 * std::numbers::pi * 1.3 * x / 64.0) +
                        127.0 / 255.0;
  }
  return signal;
}

std::vector<std::uint8_t> distort_quantize(std::span<const double> values, double gamma_b, Rounding rounding) {
  detail::require_positive_gamma(gamma_b);
  std::vector<std::uint8_t> levels(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double scaled = std::pow(std::clamp(values[i], 0.0, 1.0), gamma_b) * kMaxLevel;
    const double level = rounding == Rounding::kTruncate ? std::floor(scaled) : std::round(scaled);
    levels[i] = static_cast<std::uint8_t>(std::clamp(level, 0.0, kMaxLevel));
  }
  return levels;
}

double estimate_with(Method method, const NormalizedImage<double>& image) {
  return method == Method::kAgtMe ? estimate_gamma(image).gamma : cab_gamma(image).gamma;
}

double relative_gamma(const NormalizedImage<double>& original, const NormalizedImage<double>& distorted,
                      Method method) {
  return estimate_with(method, original) / estimate_with(method, distorted);
}

SweepResult rmse_sweep(std::vector<CorpusEntry> corpus, std::span<const double> grid,
                       const SweepOptions& options) {
  if (corpus.empty()) throw std::domain_error("sweep corpus is empty");
  if (grid.empty()) throw std::domain_error("sweep grid is empty");
  for (double g : grid) detail::require_positive_gamma(g);
  std::sort(corpus.begin(), corpus.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.id < b.id; });

  const auto images = static_cast<Index>(corpus.size());
  const auto biases = static_cast<Index>(grid.size());
  Eigen::MatrixXd agt(images, biases);
  Eigen::MatrixXd cab(images, biases);
  SweepResult result;
  result.bias_gammas.assign(grid.begin(), grid.end());

  for (Index k = 0; k < images; ++k) {
    const CorpusEntry& entry = corpus[static_cast<std::size_t>(k)];
    result.image_ids.push_back(entry.id);
    const auto original = normalize(entry.image);
    const double agt_original = estimate_with(Method::kAgtMe, original);
    const double cab_original = estimate_with(Method::kCab, original);

    std::vector<double> unit;
    if (options.pipeline == Pipeline::kQuantized) {
      unit.reserve(entry.image.levels.size());
      for (auto l : entry.image.levels) unit.push_back(l / kMaxLevel);
    }
    for (Index b = 0; b < biases; ++b) {
      const double bias = grid[static_cast<std::size_t>(b)];
      const NormalizedImage<double> distorted =
          options.pipeline == Pipeline::kQuantized
              ? normalize(GrayImage{entry.image.width, entry.image.height, distort_quantize(unit, bias)})
              : apply_gamma(original, bias);
      agt(k, b) = agt_original / estimate_with(Method::kAgtMe, distorted);
      cab(k, b) = cab_original / estimate_with(Method::kCab, distorted);
    }
  }
  result.agt_me = aggregate(Method::kAgtMe, std::move(agt), grid, options.exclude_identity_from_mean);
  result.cab = aggregate(Method::kCab, std::move(cab), grid, options.exclude_identity_from_mean);
  return result;
}

SweepResult rmse_sweep(const std::filesystem::path& directory, std::span<const double> grid,
                       const SweepOptions& options) {
  std::error_code ec;
  std::vector<std::filesystem::path> files;
  for (const auto& item : std::filesystem::directory_iterator(directory, ec)) {
    if (item.is_regular_file() && item.path().extension() == ".pgm") files.push_back(item.path());
  }
  if (ec) throw io::IoError("cannot list corpus directory '" + directory.string() + "': " + ec.message());
  std::sort(files.begin(), files.end());

  std::vector<CorpusEntry> corpus;
  std::vector<FileError> errors;
  for (const auto& file : files) {
    const std::string id = file.filename().string();
    try {
      corpus.push_back(CorpusEntry{id, io::read_gray(file)});
    } catch (const std::exception& e) {
      errors.push_back(FileError{id, e.what()});
    }
  }
  if (corpus.empty()) {
    throw std::domain_error("no readable .pgm images in '" + directory.string() + "'");
  }
  SweepResult result = rmse_sweep(std::move(corpus), grid, options);
  result.errors = std::move(errors);
  return result;
}

std::string full_precision(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "gamma_b,image_id,gamma_r,method\n";
  for (const MethodSweep* sweep : {&result.agt_me, &result.cab}) {
    for (std::size_t b = 0; b < result.bias_gammas.size(); ++b) {
      for (std::size_t k = 0; k < result.image_ids.size(); ++k) {
        out << full_precision(result.bias_gammas[b]) << ',' << result.image_ids[k] << ','
            << full_precision(sweep->recognized(static_cast<Index>(k), static_cast<Index>(b))) << ','
            << method_name(sweep->method) << '\n';
      }
    }
  }
}

double quantized_neg_entropy(const Histogram256& hist, double gamma) {
  const auto lut = gamma_lut(gamma);
  Histogram256 mapped;
  for (int l = 0; l < kLevels; ++l) {
    const auto c = hist.counts()[static_cast<std::size_t>(l)];
    if (c != 0) mapped.add(lut[static_cast<std::size_t>(l)], c);
  }
  return -differential_entropy(mapped);
}

std::vector<LossPoint> loss_curve(const Histogram256& hist, std::span<const double> grid) {
  if (grid.empty()) throw std::domain_error("loss curve grid is empty");
  std::vector<LossPoint> curve;
  curve.reserve(grid.size());
  for (double gamma : grid) {
    curve.push_back(LossPoint{gamma, predicted_neg_entropy(hist, gamma), quantized_neg_entropy(hist, gamma)});
  }
  return curve;
}

void write_curve_csv(std::span<const double> gammas, std::span<const double> losses, std::ostream& out) {
  out << "gamma,loss\n";
  for (std::size_t i = 0; i < gammas.size() && i < losses.size(); ++i) {
    out << full_precision(gammas[i]) << ',' << full_precision(losses[i]) << '\n';
  }
}

std::vector<TimingRow> timing_run(std::span<const Index> sides, int repetitions, std::uint64_t seed) {
  if (repetitions < 3) throw std::domain_error("timing needs at least 3 repetitions");
  std::mt19937_64 rng(seed);
  std::vector<TimingRow> rows;
  for (Index side : sides) {
    if (side < 1) throw std::domain_error("image side must be positive");
    GrayImage image{side, side, std::vector<std::uint8_t>(static_cast<std::size_t>(side * side))};
    for (auto& level : image.levels) level = static_cast<std::uint8_t>(rng() >> 56);

    volatile double sink = estimate_gamma(image).gamma;  // warm-up
    double total_ms = 0.0;
    for (int r = 0; r < repetitions; ++r) {
      const auto start = std::chrono::steady_clock::now();
      sink = estimate_gamma(image).gamma;
      const auto stop = std::chrono::steady_clock::now();
      total_ms += std::chrono::duration<double, std::milli>(stop - start).count();
    }
    (void)sink;
    rows.push_back(TimingRow{side, total_ms / repetitions});
  }
  return rows;
}

void write_timing_csv(std::span<const TimingRow> rows, std::ostream& out) {
  out << "size,mean_ms\n";
  for (const auto& row : rows) out << row.side << ',' << full_precision(row.mean_ms) << '\n';
}

std::vector<SpectrumBin> scanline_spectrum(std::span<const double> line) {
  if (line.size() < 2) throw std::domain_error("scan line needs at least two samples");
  const double mean = std::accumulate(line.begin(), line.end(), 0.0) / static_cast<double>(line.size());
  std::vector<double> centered(line.size());
  std::transform(line.begin(), line.end(), centered.begin(), [mean](double v) { return v - mean; });

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, centered);

  std::vector<SpectrumBin> bins;
  const auto half = static_cast<Index>(line.size() / 2);
  for (Index k = 0; k <= half; ++k) bins.push_back(SpectrumBin{k, std::norm(spectrum[static_cast<std::size_t>(k)])});
  return bins;
}

std::vector<SpectrumBin> scanline_spectrum(std::span<const std::uint8_t> line) {
  std::vector<double> values(line.begin(), line.end());
  return scanline_spectrum(std::span<const double>(values));
}

SignalReport signal_experiment(Rounding rounding) {
  SignalReport report;
  report.rounding = rounding;
  const Signal1D signal = synth_signal();
  const std::vector<double> samples(signal.samples.data(), signal.samples.data() + signal.samples.size());

  // Both signals live in 8 bits: quantize y, then distort the quantized signal.
  report.original_levels = distort_quantize(samples, 1.0, rounding);
  std::vector<double> unit;
  for (auto l : report.original_levels) unit.push_back(l / kMaxLevel);
  report.distorted_levels = distort_quantize(unit, report.distortion_gamma, rounding);

  const auto original = normalize_levels(report.original_levels);
  const auto distorted = normalize_levels(report.distorted_levels);
  report.agt_single = 1.0 / estimate_with(Method::kAgtMe, distorted);
  report.agt_relative = relative_gamma(original, distorted, Method::kAgtMe);
  report.cab_single = 1.0 / estimate_with(Method::kCab, distorted);
  report.cab_relative = relative_gamma(original, distorted, Method::kCab);

  const auto grid = make_grid(0.2, 1.6, 0.01);
  report.loss = loss_curve(Histogram256::from_levels(report.distorted_levels), grid);
  return report;
}

void write_signal_report(const SignalReport& report, std::ostream& out) {
  out << "record,gamma,value\n";
  out << "distortion_gamma,," << full_precision(report.distortion_gamma) << '\n';
  out << "agt_me_single,," << full_precision(report.agt_single) << '\n';
  out << "agt_me_relative,," << full_precision(report.agt_relative) << '\n';
  out << "cab_single,," << full_precision(report.cab_single) << '\n';
  out << "cab_relative,," << full_precision(report.cab_relative) << '\n';
  for (const auto& p : report.loss) {
    out << "loss_predicted," << full_precision(p.gamma) << ',' << full_precision(p.predicted) << '\n';
  }
  for (const auto& p : report.loss) {
    out << "loss_quantized," << full_precision(p.gamma) << ',' << full_precision(p.quantized) << '\n';
  }
}

}  // namespace entgamma::bench
