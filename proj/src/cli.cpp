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

#include "entgamma/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <variant>

#include "entgamma/bench.hpp"
#include "entgamma/color.hpp"
#include "entgamma/core.hpp"
#include "entgamma/imageio.hpp"

namespace entgamma::cli {
namespace {

struct Config {
  std::string input;
  std::string output;
  std::string mask;
  bool visual = false;
  std::string strategy = std::string(strategy_name(kDefaultStrategy));
  std::optional<double> gamma;
  std::string grid;
  std::vector<long> sizes{256, 512, 1024, 2048};
  int repetitions = 5;
};

std::string human(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

template <typename T, typename F>
std::string joined(const std::vector<T>& items, F&& format) {
  std::string text;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) text += ',';
    text += format(items[i]);
  }
  return text;
}

CorrectionOptions correction_options(const Config& config) {
  CorrectionOptions options;
  options.variant = config.visual ? Variant::kVisual : Variant::kRaw;
  options.gamma_override = config.gamma;
  if (!config.mask.empty()) options.mask = io::read_mask(config.mask);
  return options;
}

// Both the gray and color paths reduce to a list of per-plane results.
ColorCorrection correct_any(const io::Image& image, const Config& config, const CorrectionOptions& options) {
  if (const auto* gray = std::get_if<GrayImage>(&image)) {
    GrayCorrection corrected = correct_gray(*gray, options);
    const Histogram256 hist = options.mask ? Histogram256::from_levels(gray->levels, *options.mask)
                                           : Histogram256::from_levels(gray->levels);
    ColorCorrection result;
    result.image.width = gray->width;
    result.image.height = gray->height;
    result.image.channels[0] = std::move(corrected.image.levels);
    result.estimates = {corrected.estimate};
    result.entropy_bits = {shannon_entropy(hist)};
    return result;
  }
  return correct_color(std::get<ColorImage>(image), parse_strategy(config.strategy), options);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  io::write_bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()),
                  path);
}

int cmd_estimate(const Config& config, std::ostream& out) {
  CorrectionOptions options = correction_options(config);
  options.variant = Variant::kRaw;
  options.gamma_override.reset();
  const ColorCorrection result = correct_any(io::read_image(config.input), config, options);
  out << "gamma=" << joined(result.estimates, [](const GammaEstimate& e) { return human(e.gamma); })
      << " gamma_visual="
      << joined(result.estimates, [](const GammaEstimate& e) { return human(visual_gamma(e).gamma); })
      << " entropy_bits=" << joined(result.entropy_bits, [](double h) { return human(h); })
      << " gain_bits=" << joined(result.estimates, [](const GammaEstimate& e) { return human(e.entropy_gain_bits); })
      << '\n';
  return kExitOk;
}

int cmd_correct(const Config& config, std::ostream& out) {
  if (config.gamma && config.visual) {
    throw std::domain_error("--gamma and --visual cannot be combined");
  }
  const io::Image image = io::read_image(config.input);
  ColorCorrection result = correct_any(image, config, correction_options(config));
  if (std::holds_alternative<GrayImage>(image)) {
    io::write_image(GrayImage{result.image.width, result.image.height, std::move(result.image.channels[0])},
                    config.output);
  } else {
    io::write_image(result.image, config.output);
  }
  const bool visual = result.estimates.front().variant == Variant::kVisual;
  out << "gamma=" << joined(result.estimates, [](const GammaEstimate& e) { return human(e.gamma); })
      << " variant=" << (visual ? "visual" : "raw")
      << " gain_bits=" << joined(result.estimates, [](const GammaEstimate& e) { return human(e.entropy_gain_bits); })
      << '\n';
  return kExitOk;
}

int cmd_curve(const Config& config, std::ostream& out) {
  const io::Image image = io::read_image(config.input);
  std::vector<std::uint8_t> plane;
  if (const auto* gray = std::get_if<GrayImage>(&image)) {
    plane = gray->levels;
  } else {
    const auto& color = std::get<ColorImage>(image);
    for (Index i = 0; i < color.size(); ++i) {
      const Rgb p = pixel_at(color, i);
      plane.push_back(std::max({p[0], p[1], p[2]}));
    }
  }
  const Histogram256 hist = config.mask.empty() ? Histogram256::from_levels(plane)
                                                : Histogram256::from_levels(plane, io::read_mask(config.mask));
  const auto grid = config.grid.empty() ? bench::make_grid(0.1, 3.0, 0.01) : bench::parse_grid(config.grid);
  const auto curve = bench::loss_curve(hist, grid);

  std::vector<double> predicted, quantized;
  for (const auto& p : curve) {
    predicted.push_back(p.predicted);
    quantized.push_back(p.quantized);
  }
  std::ostringstream predicted_csv, quantized_csv;
  bench::write_curve_csv(grid, predicted, predicted_csv);
  bench::write_curve_csv(grid, quantized, quantized_csv);
  emit(config.output, predicted_csv.str(), out);
  if (!config.output.empty()) emit(config.output + ".quantized.csv", quantized_csv.str(), out);
  return kExitOk;
}

int cmd_sweep(const Config& config, std::ostream& out, std::ostream& err) {
  const auto grid = config.grid.empty() ? bench::default_bias_grid() : bench::parse_grid(config.grid);
  const bench::SweepResult result = bench::rmse_sweep(std::filesystem::path(config.input), grid);
  std::ostringstream csv;
  bench::write_sweep_csv(result, csv);
  emit(config.output, csv.str(), out);
  std::ostream& summary = config.output.empty() ? err : out;
  for (const auto& e : result.errors) summary << "skipped " << e.image_id << ": " << e.message << '\n';
  summary << "images=" << result.image_ids.size() << " agt-me_mean_rmse=" << human(result.agt_me.mean_rmse)
          << " cab_mean_rmse=" << human(result.cab.mean_rmse) << '\n';
  return kExitOk;
}

int cmd_time(const Config& config, std::ostream& out) {
  std::vector<Index> sides(config.sizes.begin(), config.sizes.end());
  const auto rows = bench::timing_run(sides, config.repetitions);
  std::ostringstream csv;
  bench::write_timing_csv(rows, csv);
  emit(config.output, csv.str(), out);
  return kExitOk;
}

int cmd_signal(const Config& config, std::ostream& out) {
  const auto report = bench::signal_experiment();
  std::ostringstream csv;
  bench::write_signal_report(report, csv);
  if (config.output.empty()) {
    out << csv.str();
  } else {
    emit(config.output, csv.str(), out);
    out << "agt_me_single=" << human(report.agt_single) << " agt_me_relative=" << human(report.agt_relative)
        << " cab_single=" << human(report.cab_single) << " cab_relative=" << human(report.cab_relative) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blind inverse gamma correction by differential-entropy maximization", "entgamma"};
  app.require_subcommand(1, 1);
  Config config;

  const auto add_common = [&config](CLI::App* sub) {
    sub->add_option("--mask", config.mask, "P5 mask image; nonzero pixels are used")->check(CLI::ExistingFile);
    sub->add_option("--strategy", config.strategy,
                    "Color strategy: hsv-v-channel, gray-common-gamma, per-channel-independent, all-channels-pooled");
  };

  auto* estimate = app.add_subcommand("estimate", "Print the restoration gamma of an image");
  estimate->add_option("input", config.input, "PGM/PPM image")->required()->check(CLI::ExistingFile);
  estimate->add_flag("--visual", config.visual, "Accepted for symmetry; both gammas are printed");
  add_common(estimate);

  auto* correct = app.add_subcommand("correct", "Gamma-correct an image");
  correct->add_option("input", config.input, "PGM/PPM image")->required()->check(CLI::ExistingFile);
  correct->add_option("--out", config.output, "Output PGM/PPM path")->required();
  correct->add_flag("--visual", config.visual, "Divide the estimate by 2.2");
  correct->add_option("--gamma", config.gamma, "Apply this exponent instead of the estimate")
      ->check(CLI::PositiveNumber);
  add_common(correct);

  auto* curve = app.add_subcommand("curve", "Emit the negative-entropy loss curve");
  curve->add_option("input", config.input, "PGM/PPM image")->required()->check(CLI::ExistingFile);
  curve->add_option("--grid", config.grid, "START:STOP:STEP");
  curve->add_option("--out", config.output, "CSV path; the quantized pipeline goes to <out>.quantized.csv");
  curve->add_option("--mask", config.mask, "P5 mask image")->check(CLI::ExistingFile);

  auto* sweep = app.add_subcommand("sweep", "Synthetic gamma distortion RMSE sweep over a .pgm corpus");
  sweep->add_option("corpus", config.input, "Directory of .pgm images")->required()->check(CLI::ExistingDirectory);
  sweep->add_option("--grid", config.grid, "START:STOP:STEP (default 0.1:3.0:0.1)");
  sweep->add_option("--out", config.output, "CSV path");

  auto* time = app.add_subcommand("time", "Time normalization plus estimation on random square images");
  time->add_option("--sizes", config.sizes, "Square image sides")->delimiter(',')->check(CLI::PositiveNumber);
  time->add_option("--reps", config.repetitions, "Repetitions per size")->check(CLI::Range(3, 1000000));
  time->add_option("--out", config.output, "CSV path");

  auto* signal = app.add_subcommand("signal", "Run the 1-D synthetic signal experiment");
  signal->add_option("--out", config.output, "CSV path");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("entgamma");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*estimate) return cmd_estimate(config, out);
    if (*correct) return cmd_correct(config, out);
    if (*curve) return cmd_curve(config, out);
    if (*sweep) return cmd_sweep(config, out, err);
    if (*time) return cmd_time(config, out);
    if (*signal) return cmd_signal(config, out);
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace entgamma::cli
