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

#include "entropot/bench/images.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <random>

namespace entropot::bench {
namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
         (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
         (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
         static_cast<std::uint32_t>(bytes[offset + 3]);
}

Vector normalized(Vector v) {
  const double total = compensated_sum(v);
  return v / total;
}

// First `count` entries of a seeded Fisher-Yates shuffle of 0..n-1.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count,
                                                    std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(count);
  return idx;
}

}  // namespace

IdxFile parse_idx(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw IoError("idx: file shorter than its header");
  IdxFile f;
  f.magic = read_be32(bytes, 0);
  if ((f.magic >> 16) != 0) throw IoError("idx: bad magic number");
  if (((f.magic >> 8) & 0xff) != 0x08) throw IoError("idx: only unsigned byte data is supported");
  const std::size_t rank = f.magic & 0xff;
  if (rank == 0) throw IoError("idx: rank must be positive");
  const std::size_t header = 4 + 4 * rank;
  if (bytes.size() < header) throw IoError("idx: truncated header");
  std::size_t payload = 1;
  for (std::size_t d = 0; d < rank; ++d) {
    f.dims.push_back(read_be32(bytes, 4 + 4 * d));
    payload *= f.dims.back();
  }
  if (bytes.size() - header < payload) throw IoError("idx: truncated payload");
  f.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(header),
                bytes.begin() + static_cast<std::ptrdiff_t>(header + payload));
  return f;
}

IdxFile read_idx(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("idx: cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_idx(bytes);
}

ImageHistogram image_to_histogram(std::span<const std::uint8_t> pixels, int rows, int cols,
                                  int side) {
  if (side < 1 || rows < 1 || cols < 1) throw InvalidArgument("image: sizes must be positive");
  if (pixels.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw InvalidArgument("image: pixel count does not match its shape");
  }
  const int factor = std::max(1, (std::max(rows, cols) + side - 1) / side);
  const int down_rows = (rows + factor - 1) / factor;
  const int down_cols = (cols + factor - 1) / factor;
  Matrix down = Matrix::Zero(down_rows, down_cols);
  for (int r = 0; r < down_rows; ++r) {
    for (int c = 0; c < down_cols; ++c) {
      double sum = 0.0;
      int count = 0;
      for (int dr = 0; dr < factor && r * factor + dr < rows; ++dr) {
        for (int dc = 0; dc < factor && c * factor + dc < cols; ++dc) {
          sum += pixels[static_cast<std::size_t>((r * factor + dr) * cols + c * factor + dc)] / 255.0;
          ++count;
        }
      }
      down(r, c) = sum / count;
    }
  }
  // Center crop (negative offset) or pad (positive offset).
  const int off_r = (side - down_rows) / 2;
  const int off_c = (side - down_cols) / 2;
  Vector out = Vector::Constant(static_cast<Index>(side) * side, kPixelFloor);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const int sr = r - off_r;
      const int sc = c - off_c;
      if (sr >= 0 && sr < down_rows && sc >= 0 && sc < down_cols) {
        out[static_cast<Index>(r) * side + c] += down(sr, sc);
      }
    }
  }
  return {normalized(std::move(out)), side};
}

std::vector<ImageHistogram> load_mnist(const std::string& images_path, int count,
                                       std::uint64_t seed, int side) {
  const IdxFile f = read_idx(images_path);
  if (f.magic == kIdxLabelsMagic) throw IoError("mnist: " + images_path + " is a labels file");
  if (f.magic != kIdxImagesMagic) throw IoError("mnist: expected an IDX3 image file");
  const std::size_t available = f.dims[0];
  const int rows = static_cast<int>(f.dims[1]);
  const int cols = static_cast<int>(f.dims[2]);
  if (count < 0 || static_cast<std::size_t>(count) > available) {
    throw IoError("mnist: requested more images than the file holds");
  }
  std::mt19937_64 rng(seed);
  const std::size_t stride = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  std::vector<ImageHistogram> out;
  for (std::size_t idx : sample_without_replacement(available, static_cast<std::size_t>(count), rng)) {
    std::span<const std::uint8_t> px(f.data.data() + idx * stride, stride);
    out.push_back(image_to_histogram(px, rows, cols, side));
  }
  return out;
}

std::vector<ImageHistogram> synthetic_images(int count, int side, double foreground_fraction,
                                             std::uint64_t seed) {
  if (count < 0) throw InvalidArgument("synthetic_images: count must be nonnegative");
  if (side < 2) throw InvalidArgument("synthetic_images: side must be at least 2");
  if (!(foreground_fraction > 0.0 && foreground_fraction <= 1.0)) {
    throw InvalidArgument("synthetic_images: foreground fraction must lie in (0, 1]");
  }
  const std::size_t n = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
  // Guard against products like 0.2 * 400 landing a hair above an integer.
  const double raw = foreground_fraction * static_cast<double>(n);
  const std::size_t k =
      std::min(n, static_cast<std::size_t>(std::ceil(raw - 1e-9 * raw)));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ImageHistogram> out;
  for (int t = 0; t < count; ++t) {
    Vector px = Vector::Constant(static_cast<Index>(n), kPixelFloor);
    for (std::size_t idx : sample_without_replacement(n, k, rng)) {
      px[static_cast<Index>(idx)] = 1.0 - unit(rng);  // (0, 1]
    }
    out.push_back({normalized(std::move(px)), side});
  }
  return out;
}

Matrix pixel_cost(int side) {
  if (side < 1) throw InvalidArgument("pixel_cost: side must be positive");
  const Index n = static_cast<Index>(side) * side;
  Matrix c(n, n);
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      const double di = static_cast<double>(p / side - q / side);
      const double dj = static_cast<double>(p % side - q % side);
      c(p, q) = std::sqrt(di * di + dj * dj);
    }
  }
  return c;
}

}  // namespace entropot::bench
