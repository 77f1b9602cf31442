// Copyright 2026 The entropot Authors.
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

// Image histograms for the benchmark: IDX (MNIST) ingestion, a synthetic
// generator, and the Euclidean pixel-position cost.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entropot/types.hpp"

namespace entropot::bench {

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;
// Added to every pixel before normalization so that marginals are positive.
inline constexpr double kPixelFloor = 1e-6;
inline constexpr int kDefaultMnistSide = 16;
inline constexpr int kDefaultSyntheticSide = 20;
inline constexpr double kDefaultForegroundFraction = 0.2;

// Normalized image, row-major, side x side pixels.
struct ImageHistogram {
  Vector pixels;
  int side = 0;
};

// Unsigned-byte IDX file: big-endian magic 0x000008NN (NN = rank), NN
// big-endian uint32 dimensions, then the payload.
struct IdxFile {
  std::uint32_t magic = 0;
  std::vector<std::uint32_t> dims;
  std::vector<std::uint8_t> data;
};

// Throws IoError on a bad magic number, unsupported element type or
// truncated payload.
IdxFile parse_idx(std::span<const std::uint8_t> bytes);
IdxFile read_idx(const std::string& path);

// 28 x 28 bytes in [0, 255] -> side x side histogram: scale to [0, 1], block
// average by ceil(28 / side), center crop or zero-pad to side, add the floor,
// normalize.
ImageHistogram image_to_histogram(std::span<const std::uint8_t> pixels, int rows, int cols,
                                  int side);

// Samples `count` distinct images uniformly (seeded) from an IDX3 image file.
// Throws IoError for a labels file or count beyond the file.
std::vector<ImageHistogram> load_mnist(const std::string& images_path, int count,
                                       std::uint64_t seed, int side = kDefaultMnistSide);

// Each image: ceil(fraction * side^2) distinct foreground pixels with
// intensities uniform on (0, 1], background kPixelFloor, normalized.
std::vector<ImageHistogram> synthetic_images(int count, int side, double foreground_fraction,
                                             std::uint64_t seed);

// C[(i1, j1), (i2, j2)] = sqrt((i1 - i2)^2 + (j1 - j2)^2), row-major flattening.
Matrix pixel_cost(int side);

}  // namespace entropot::bench
