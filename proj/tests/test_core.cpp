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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "entgamma/core.hpp"
#include "oracles.hpp"

namespace eg = entgamma;
using doctest::Approx;

TEST_CASE("normalize maps levels to bin centers") {
  const std::vector<int> levels{0, 255, 127};
  const auto image = eg::normalize(std::span<const int>(levels), 3, 1);
  CHECK(image.intensities()[0] == 0.001953125);
  CHECK(image.intensities()[1] == 0.998046875);
  CHECK(image.intensities()[2] == 0.498046875);
  CHECK(image.depth() == eg::SourceDepth::kEightBit);
}

TEST_CASE("normalize rejects out-of-range levels with their index") {
  const std::vector<int> levels{3, 256, 1};
  try {
    (void)eg::normalize(std::span<const int>(levels), 3, 1);
    FAIL("expected domain_error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
  const std::vector<int> negative{-1};
  CHECK_THROWS_AS((void)eg::normalize(std::span<const int>(negative), 1, 1), std::domain_error);
  CHECK_THROWS_AS((void)eg::normalize(std::span<const int>(levels), 2, 1), std::domain_error);
}

TEST_CASE("denormalize inverts normalize for every level") {
  std::vector<int> all(256);
  for (int l = 0; l < 256; ++l) all[static_cast<std::size_t>(l)] = l;
  const auto back = eg::denormalize(eg::normalize(std::span<const int>(all), 16, 16));
  for (int l = 0; l < 256; ++l) CHECK(back.levels[static_cast<std::size_t>(l)] == l);
  CHECK(back.width == 16);

  CHECK(eg::intensity_to_level(0.001953125) == 0);
  CHECK(eg::intensity_to_level(0.998046875) == 255);
  CHECK(eg::intensity_to_level(1.0 / std::numbers::e) == 94);  // round(93.677...)
}

TEST_CASE("NormalizedImage enforces the open interval") {
  Eigen::ArrayXd u(2);
  u << 0.5, 1.0;
  CHECK_THROWS_AS(eg::NormalizedImage<double>(2, 1, u), std::domain_error);
  u << 0.0, 0.5;
  CHECK_THROWS_AS(eg::NormalizedImage<double>(2, 1, u), std::domain_error);
  u << 0.5, std::nan("");
  CHECK_THROWS_AS(eg::NormalizedImage<double>(2, 1, u), std::domain_error);
  u << 0.5, 0.25;
  CHECK_THROWS_AS(eg::NormalizedImage<double>(3, 1, u), std::domain_error);
}

TEST_CASE("apply_gamma") {
  Eigen::ArrayXd u(3);
  u << 0.25, 0.5, 0.75;
  const eg::NormalizedImage<double> image(3, 1, u);
  CHECK(eg::apply_gamma(image, 2.0).intensities()[0] == 0.0625);
  CHECK((eg::apply_gamma(image, 1.0).intensities() == u).all());
  CHECK_THROWS_AS((void)eg::apply_gamma(image, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)eg::apply_gamma(image, -1.0), std::domain_error);

  SUBCASE("constant image is mapped to 1/e by its own estimate") {
    for (double c : {0.05, 0.3, 0.5, 0.9}) {
      const eg::NormalizedImage<double> flat(4, 1, Eigen::ArrayXd::Constant(4, c));
      const double gamma = -1.0 / std::log(c);
      const auto mapped = eg::apply_gamma(flat, gamma);
      for (eg::Index i = 0; i < 4; ++i) CHECK(mapped.intensities()[i] == Approx(std::exp(-1.0)).epsilon(1e-14));
      CHECK(eg::estimate_gamma(flat).gamma == Approx(gamma).epsilon(1e-14));
    }
  }

  SUBCASE("output is monotone and stays inside (0,1) for extreme exponents") {
    Eigen::ArrayXd v = Eigen::ArrayXd::LinSpaced(256, 0.5 / 256, 255.5 / 256);
    const eg::NormalizedImage<double> ramp(256, 1, v);
    for (double g : {1e-3, 0.1, 3.0, 500.0}) {
      const auto out = eg::apply_gamma(ramp, g).intensities();
      CHECK((out > 0.0).all());
      CHECK((out < 1.0).all());
      for (eg::Index i = 1; i < out.size(); ++i) CHECK(out[i] >= out[i - 1]);
    }
  }
}

TEST_CASE("estimate_gamma closed form") {
  SUBCASE("uniform levels give gamma 1") {
    CHECK(eg::estimate_gamma(eg::normalize(eg::oracle::uniform_levels_image())).gamma ==
          Approx(1.0).epsilon(0.005));
  }
  SUBCASE("all-black image") {
    // -1/ln(1/512), evaluated at 30 digits.
    const auto est = eg::estimate_gamma(eg::normalize(eg::oracle::constant_image(8, 8, 0)));
    CHECK(est.gamma == Approx(0.1602994489876626).epsilon(1e-13));
    CHECK(est.variant == eg::Variant::kRaw);
  }
  SUBCASE("two-valued image") {
    Eigen::ArrayXd u(4);
    u << 0.25, 0.5, 0.25, 0.5;
    // 2 / (3 ln 2)
    CHECK(eg::estimate_gamma(eg::NormalizedImage<double>(2, 2, u)).gamma ==
          Approx(0.9617966939259756).epsilon(1e-13));
  }
  SUBCASE("empty image") {
    CHECK_THROWS_AS((void)eg::estimate_gamma(eg::NormalizedImage<double>()), std::domain_error);
    CHECK_THROWS_AS((void)eg::estimate_gamma(eg::Histogram256()), std::domain_error);
  }
  SUBCASE("accepts array expressions") {
    Eigen::ArrayXd u = Eigen::ArrayXd::LinSpaced(100, 0.1, 0.9);
    CHECK(eg::estimate_gamma(u.square()).gamma == Approx(eg::estimate_gamma(u).gamma / 2.0).epsilon(1e-12));
  }
  SUBCASE("histogram route agrees with the pixel route") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
      const auto image = eg::oracle::random_gray(rng, 31, 17);
      CHECK(eg::estimate_gamma(eg::Histogram256::from_levels(image.levels)).gamma ==
            Approx(eg::estimate_gamma(eg::normalize(image)).gamma).epsilon(1e-12));
    }
  }
  SUBCASE("float scalar") {
    const auto image = eg::normalize<float>(eg::oracle::uniform_levels_image());
    CHECK(eg::estimate_gamma(image).gamma == Approx(1.0).epsilon(0.005));
  }
}

TEST_CASE("range: estimates are finite and positive for every 8-bit extreme") {
  for (int level : {0, 1, 128, 254, 255}) {
    const auto est = eg::estimate_gamma(eg::normalize(eg::oracle::constant_image(4, 4, static_cast<std::uint8_t>(level))));
    CHECK(std::isfinite(est.gamma));
    CHECK(est.gamma > 0.0);
  }
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto est = eg::estimate_gamma(eg::normalize(eg::oracle::random_gray(rng, 9, 9)));
    CHECK(std::isfinite(est.gamma));
    CHECK(est.gamma > 0.0);
  }
}

TEST_CASE("scale law and fixed point on continuous data") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const auto image = eg::oracle::random_continuous(rng, 40, 30);
    const double gamma = eg::estimate_gamma(image).gamma;
    for (double beta : {0.2, 0.7, 1.3, 2.5}) {
      CHECK(eg::estimate_gamma(eg::apply_gamma(image, beta)).gamma * beta == Approx(gamma).epsilon(1e-12));
    }
    CHECK(eg::estimate_gamma(eg::apply_gamma(image, gamma)).gamma == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("estimate_gamma_masked") {
  std::mt19937_64 rng(23);
  const auto image = eg::normalize(eg::oracle::random_gray(rng, 20, 10));

  SUBCASE("full mask is bit-identical to the unmasked estimate") {
    const auto full = eg::estimate_gamma_masked(image, eg::MaskImage::full(20, 10));
    CHECK(full.gamma == eg::estimate_gamma(image).gamma);
  }
  SUBCASE("mask on the u = 0.5 pixels") {
    Eigen::ArrayXd u(6);
    u << 0.5, 0.1, 0.5, 0.9, 0.5, 0.3;
    const eg::NormalizedImage<double> mixed(3, 2, u);
    const eg::MaskImage mask(3, 2, {1, 0, 1, 0, 1, 0});
    CHECK(mask.count() == 3);
    CHECK(eg::estimate_gamma_masked(mixed, mask).gamma == Approx(1.4426950408889634).epsilon(1e-13));
  }
  SUBCASE("mask on the uniform region of a two-region image") {
    eg::GrayImage two{32, 16, std::vector<std::uint8_t>(512, 7)};
    std::vector<std::uint8_t> flags(512, 0);
    for (int l = 0; l < 256; ++l) {
      two.levels[static_cast<std::size_t>(l)] = static_cast<std::uint8_t>(l);
      flags[static_cast<std::size_t>(l)] = 1;
    }
    const auto est = eg::estimate_gamma_masked(eg::normalize(two), eg::MaskImage(32, 16, flags));
    CHECK(est.gamma == Approx(1.0).epsilon(0.005));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS((void)eg::estimate_gamma_masked(image, eg::MaskImage::full(10, 20)), std::domain_error);
    CHECK_THROWS_AS((void)eg::estimate_gamma_masked(image, eg::MaskImage(20, 10, std::vector<std::uint8_t>(200, 0))),
                    std::domain_error);
  }
}

TEST_CASE("visual_gamma") {
  CHECK(eg::visual_gamma({2.2, eg::Variant::kRaw, 0.0}).gamma == Approx(1.0));
  CHECK(eg::visual_gamma({1.0, eg::Variant::kRaw, 0.0}).gamma == Approx(0.45454545454545453));
  const auto v = eg::visual_gamma(eg::detail::raw_estimate(0.65));
  CHECK(v.gamma == Approx(0.29545454545454547));
  CHECK(v.variant == eg::Variant::kVisual);
  // The gain of the applied exponent is below the optimum's and here negative.
  CHECK(v.entropy_gain_bits < eg::entropy_gain(0.65));
  CHECK(v.entropy_gain_bits == Approx(eg::entropy_gain(0.65 / 2.2, 0.65)));
  CHECK(eg::visual_gamma({1.0, eg::Variant::kRaw, 0.0}).entropy_gain_bits < 0.0);
  CHECK_THROWS_AS((void)eg::visual_gamma(v), std::domain_error);
}

TEST_CASE("cab_gamma") {
  CHECK(eg::cab_gamma(Eigen::ArrayXd::Constant(3, 0.5)).gamma == Approx(1.0));
  CHECK(eg::cab_gamma(Eigen::ArrayXd::Constant(3, 0.25)).gamma == Approx(0.5));
  Eigen::ArrayXd u(2);
  u << std::exp(-1.0) - 0.1, std::exp(-1.0) + 0.1;
  CHECK(eg::cab_gamma(u).gamma == Approx(0.6931471805599453).epsilon(1e-13));
  CHECK_THROWS_AS((void)eg::cab_gamma(Eigen::ArrayXd()), std::domain_error);
}

TEST_CASE("shannon and differential entropy") {
  eg::Histogram256 single;
  single.add(42, 10);
  CHECK(eg::shannon_entropy(single) == 0.0);
  CHECK(eg::differential_entropy(single) == Approx(-8.0));

  const auto uniform = eg::Histogram256::from_levels(eg::oracle::uniform_levels_image().levels);
  CHECK(eg::shannon_entropy(uniform) == Approx(8.0));
  CHECK(eg::differential_entropy(uniform) == Approx(0.0));

  eg::Histogram256 two;
  two.add(0, 5);
  two.add(200, 5);
  CHECK(eg::shannon_entropy(two) == Approx(1.0));

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto hist = eg::oracle::random_histogram(rng);
    // Brute-force density sum over 256 bins of width 1/256.
    double brute = 0.0;
    for (int l = 0; l < 256; ++l) {
      const double p = static_cast<double>(hist.counts()[static_cast<std::size_t>(l)]) / hist.total();
      if (p > 0) brute -= (p * 256.0) * std::log2(p * 256.0) / 256.0;
    }
    CHECK(eg::differential_entropy(hist) == Approx(brute).epsilon(1e-12));
    CHECK(eg::differential_entropy(hist) == Approx(eg::shannon_entropy(hist) - 8.0).epsilon(1e-12));
    const double h = eg::shannon_entropy(hist);
    CHECK(h >= 0.0);
    CHECK(h <= 8.0 + 1e-12);
  }
}

TEST_CASE("histogram invariants") {
  std::mt19937_64 rng(31);
  const auto image = eg::oracle::random_gray(rng, 13, 11);
  const auto hist = eg::Histogram256::from_levels(image.levels);
  std::uint64_t sum = 0;
  for (auto c : hist.counts()) sum += c;
  CHECK(sum == hist.total());
  CHECK(hist.pdf().sum() == Approx(1.0));
  CHECK((hist.pdf() >= 0.0).all());

  std::vector<std::uint8_t> flags(image.levels.size(), 0);
  for (std::size_t i = 0; i < flags.size(); i += 2) flags[i] = 1;
  const eg::MaskImage mask(13, 11, flags);
  CHECK(eg::Histogram256::from_levels(image.levels, mask).total() == static_cast<std::uint64_t>(mask.count()));
  CHECK_THROWS_AS(eg::MaskImage(2, 2, std::vector<std::uint8_t>(3, 1)), std::domain_error);
}

TEST_CASE("predicted_neg_entropy") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 15; ++t) {
    const auto hist = eg::oracle::random_histogram(rng);
    const double optimum = eg::estimate_gamma(hist).gamma;

    CHECK(eg::predicted_neg_entropy(hist, 1.0) == Approx(-eg::differential_entropy(hist)).epsilon(1e-12));

    const auto loss = [&hist](double g) { return eg::predicted_neg_entropy(hist, g); };
    const double argmin = eg::oracle::grid_argmin(loss, 0.05, 6.0, 1e-3);
    CHECK(std::abs(argmin - optimum) <= 1e-3);

    CHECK(loss(optimum) - loss(1.0) == Approx(-eg::entropy_gain(optimum)).epsilon(1e-9));

    // Discrete convexity on a grid.
    for (double g = 0.1; g < 4.0; g += 0.05) {
      CHECK(loss(g) <= 0.5 * (loss(g - 0.05) + loss(g + 0.05)) + 1e-12);
    }
  }
  CHECK_THROWS_AS((void)eg::predicted_neg_entropy(eg::Histogram256::from_levels(std::vector<std::uint8_t>{1}), 0.0),
                  std::domain_error);
}

TEST_CASE("entropy_gain") {
  CHECK(eg::entropy_gain(1.0) == 0.0);
  CHECK(eg::entropy_gain(2.0) == Approx(0.2786524795555183).epsilon(1e-13));
  CHECK(eg::entropy_gain(0.5) == Approx(0.4426950408889634).epsilon(1e-13));
  for (double g = 0.05; g < 10.0; g *= 1.3) CHECK(eg::entropy_gain(g) >= 0.0);
  CHECK_THROWS_AS((void)eg::entropy_gain(0.0), std::domain_error);
  CHECK_THROWS_AS((void)eg::entropy_gain(-2.0), std::domain_error);
}

TEST_CASE("entropy gain matches the change-of-variables integral") {
  std::mt19937_64 rng(43);
  std::vector<eg::Histogram256> cases{
      eg::Histogram256::from_levels(eg::oracle::constant_image(4, 4, 0).levels),
      eg::Histogram256::from_levels(eg::oracle::constant_image(4, 4, 255).levels),
      eg::Histogram256::from_levels(eg::oracle::constant_image(4, 4, 60).levels),
      eg::Histogram256::from_levels(eg::oracle::uniform_levels_image().levels)};
  for (int t = 0; t < 5; ++t) cases.push_back(eg::oracle::random_histogram(rng));
  for (const auto& hist : cases) {
    const double optimum = eg::estimate_gamma(hist).gamma;
    CHECK(std::abs(eg::oracle::fine_bin_entropy_change(hist, optimum) - eg::entropy_gain(optimum)) < 0.01);
  }
}

TEST_CASE("correct_gray") {
  SUBCASE("identity exponent reproduces the input") {
    std::mt19937_64 rng(47);
    const auto image = eg::oracle::random_gray(rng, 12, 7);
    eg::CorrectionOptions options;
    options.gamma_override = 1.0;
    CHECK(eg::correct_gray(image, options).image == image);
  }
  SUBCASE("constant image lands on 1/e within one level") {
    for (int level : {0, 10, 128, 250, 255}) {
      const auto out = eg::correct_gray(eg::oracle::constant_image(3, 3, static_cast<std::uint8_t>(level)));
      const double target = std::exp(-1.0) * 256.0 - 0.5;
      for (auto l : out.image.levels) CHECK(std::abs(l - target) <= 1.0);
    }
  }
  SUBCASE("visual divides the raw estimate") {
    std::mt19937_64 rng(53);
    const auto image = eg::oracle::random_gray(rng, 12, 7);
    const auto raw = eg::correct_gray(image);
    eg::CorrectionOptions options;
    options.variant = eg::Variant::kVisual;
    const auto visual = eg::correct_gray(image, options);
    CHECK(visual.estimate.gamma == Approx(raw.estimate.gamma / 2.2));
  }
  SUBCASE("lookup table matches the pixel pipeline") {
    std::mt19937_64 rng(59);
    const auto image = eg::oracle::random_gray(rng, 16, 16);
    const auto out = eg::correct_gray(image);
    const auto lut = eg::gamma_lut(out.estimate.gamma);
    for (std::size_t i = 0; i < image.levels.size(); ++i) CHECK(out.image.levels[i] == lut[image.levels[i]]);
  }
}

TEST_CASE("streaming 8-bit estimate agrees with the per-pixel path") {
  std::mt19937_64 rng(83);
  for (int t = 0; t < 10; ++t) {
    const auto image = eg::oracle::random_gray(rng, 33, 21);
    CHECK(eg::estimate_gamma(image).gamma == Approx(eg::estimate_gamma(eg::normalize(image)).gamma).epsilon(1e-12));
  }
  CHECK(eg::estimate_gamma(eg::oracle::constant_image(2, 2, 0)).gamma == Approx(0.1602994489876626).epsilon(1e-14));
  CHECK_THROWS_AS((void)eg::estimate_gamma(eg::GrayImage{3, 3, {1, 2}}), std::domain_error);
}
