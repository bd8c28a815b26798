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

// Writes the deterministic synthetic texture corpus used by the sweep
// benchmark: make_corpus <output-dir> [side]

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "entgamma/imageio.hpp"

namespace {

using entgamma::GrayImage;
using entgamma::Index;

// Only raw engine output is used so the corpus is identical across standard
// libraries; <random> distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

using Field = std::vector<double>;

// Multi-octave bilinear lattice noise, rescaled to [0, 1].
Field value_noise(Index side, int octaves, double persistence, std::uint64_t seed) {
  Rng rng(seed);
  Field field(static_cast<std::size_t>(side * side), 0.0);
  double amplitude = 1.0;
  for (int o = 0; o < octaves; ++o) {
    const Index cells = Index{4} << o;
    std::vector<double> lattice(static_cast<std::size_t>((cells + 1) * (cells + 1)));
    for (auto& v : lattice) v = rng.uniform();
    for (Index y = 0; y < side; ++y) {
      for (Index x = 0; x < side; ++x) {
        const double fx = static_cast<double>(x) * cells / side;
        const double fy = static_cast<double>(y) * cells / side;
        const Index ix = static_cast<Index>(fx);
        const Index iy = static_cast<Index>(fy);
        const double tx = fx - ix, ty = fy - iy;
        const double sx = tx * tx * (3 - 2 * tx), sy = ty * ty * (3 - 2 * ty);
        auto at = [&](Index i, Index j) { return lattice[static_cast<std::size_t>(j * (cells + 1) + i)]; };
        const double top = at(ix, iy) * (1 - sx) + at(ix + 1, iy) * sx;
        const double bottom = at(ix, iy + 1) * (1 - sx) + at(ix + 1, iy + 1) * sx;
        field[static_cast<std::size_t>(y * side + x)] += amplitude * (top * (1 - sy) + bottom * sy);
      }
    }
    amplitude *= persistence;
  }
  const auto [lo, hi] = std::minmax_element(field.begin(), field.end());
  const double min = *lo, range = *hi - *lo;
  for (auto& v : field) v = (v - min) / range;
  return field;
}

Field generate(Index side, const std::function<double(double, double, std::size_t)>& f) {
  Field field(static_cast<std::size_t>(side * side));
  for (Index y = 0; y < side; ++y) {
    for (Index x = 0; x < side; ++x) {
      const auto i = static_cast<std::size_t>(y * side + x);
      field[i] = f(static_cast<double>(x) / side, static_cast<double>(y) / side, i);
    }
  }
  return field;
}

GrayImage quantize(const Field& field, Index side) {
  GrayImage image{side, side, std::vector<std::uint8_t>(field.size())};
  for (std::size_t i = 0; i < field.size(); ++i) {
    image.levels[i] = static_cast<std::uint8_t>(std::clamp(std::round(field[i] * 255.0), 0.0, 255.0));
  }
  return image;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_corpus <output-dir> [side]\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  const Index side = argc > 2 ? std::stol(argv[2]) : 256;
  std::filesystem::create_directories(dir);
  const double pi = std::numbers::pi;

  Rng noise_rng(99);
  Field gaussian(static_cast<std::size_t>(side * side));
  for (auto& v : gaussian) v = noise_rng.normal();

  const Field rough = value_noise(side, 6, 0.55, 1);
  const Field smooth = value_noise(side, 5, 0.4, 2);
  const Field clouds = value_noise(side, 6, 0.6, 3);
  const Field speckle = value_noise(side, 7, 0.7, 4);

  struct Texture {
    std::string name;
    Field field;
  };
  std::vector<Texture> textures;
  textures.push_back({"t01_rough_noise", rough});
  textures.push_back({"t02_soft_noise", generate(side, [&](double, double, std::size_t i) { return 0.1 + 0.8 * smooth[i]; })});
  textures.push_back({"t03_gradient", generate(side, [&](double x, double, std::size_t i) {
                        return 0.2 + 0.6 * x + 0.05 * gaussian[i];
                      })});
  textures.push_back({"t04_fringe", generate(side, [&](double x, double y, std::size_t) {
                        return 0.5 + 0.35 * std::cos(2 * pi * 8 * x + 3 * std::sin(2 * pi * y));
                      })});
  textures.push_back({"t05_radial", generate(side, [&](double x, double y, std::size_t) {
                        const double r = std::hypot(x - 0.5, y - 0.5);
                        return std::clamp(1.0 - 1.3 * r, 0.0, 1.0) * 0.9 + 0.05;
                      })});
  textures.push_back({"t06_dark_clouds", generate(side, [&](double, double, std::size_t i) {
                        return clouds[i] * clouds[i] * 0.8 + 0.02;
                      })});
  textures.push_back({"t07_bright_speckle", generate(side, [&](double, double, std::size_t i) {
                        return 1.0 - 0.7 * speckle[i] * speckle[i];
                      })});
  textures.push_back({"t08_shaded_checker", generate(side, [&](double x, double y, std::size_t i) {
                        const bool even = (static_cast<int>(x * 8) + static_cast<int>(y * 8)) % 2 == 0;
                        return (even ? 0.3 : 0.7) * (0.6 + 0.4 * y) + 0.03 * gaussian[i];
                      })});
  textures.push_back({"t09_disc_scene", generate(side, [&](double x, double y, std::size_t i) {
                        double v = 0.25 + 0.2 * smooth[i];
                        const double discs[][4] = {{0.3, 0.3, 0.15, 0.85}, {0.7, 0.4, 0.12, 0.55},
                                                   {0.45, 0.75, 0.2, 0.7}, {0.8, 0.8, 0.08, 0.95}};
                        for (const auto& d : discs) {
                          if (std::hypot(x - d[0], y - d[1]) < d[2]) v = d[3] * (0.8 + 0.2 * rough[i]);
                        }
                        return v + 0.02 * gaussian[i];
                      })});
  textures.push_back({"t10_ridges", generate(side, [&](double, double, std::size_t i) {
                        return 0.5 + 0.45 * std::sin(6 * pi * clouds[i]);
                      })});

  for (const auto& t : textures) {
    const auto path = dir / (t.name + ".pgm");
    entgamma::io::write_image(quantize(t.field, side), path);
    std::cout << path.string() << '\n';
  }
  return 0;
}
