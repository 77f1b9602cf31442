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

// Seeded random instance generators for property tests.

#pragma once

#include <cstdint>
#include <random>

#include "entropot/core.hpp"

namespace entropot::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return uniform(0.0, 1.0) < p; }
  std::mt19937_64& engine() { return rng_; }

  // Probability vector; entries drawn from a mix of scales so that both tiny
  // and dominant entries occur. `zero_prob` zeroes entries (at least one
  // entry stays positive).
  Vector probability(Index n, double zero_prob = 0.0) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) {
      const double scale = coin(0.2) ? 1e-3 : 1.0;
      v[i] = coin(zero_prob) ? 0.0 : scale * uniform(0.01, 1.0);
    }
    if (v.sum() == 0.0) v[integer(0, static_cast<int>(n) - 1)] = 1.0;
    v /= v.sum();
    // Push the rounding residue into the largest entry.
    Index top = 0;
    v.maxCoeff(&top);
    v[top] += 1.0 - v.sum();
    return v;
  }

  Vector positive(Index n, double lo, double hi) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Matrix cost(Index rows, Index cols, double max = 1.0) {
    Matrix c(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) c(i, j) = uniform(0.0, max);
    }
    return c;
  }

  // Euclidean distances between random points in the unit square.
  Matrix point_cost(Index n) {
    Matrix p(n, 2);
    Matrix q(n, 2);
    for (Index i = 0; i < n; ++i) {
      p(i, 0) = uniform(0.0, 1.0);
      p(i, 1) = uniform(0.0, 1.0);
      q(i, 0) = uniform(0.0, 1.0);
      q(i, 1) = uniform(0.0, 1.0);
    }
    Matrix c(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) c(i, j) = (p.row(i) - q.row(j)).norm();
    }
    return c;
  }

  Matrix nonnegative(Index rows, Index cols, double max, double zero_prob = 0.0) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) m(i, j) = coin(zero_prob) ? 0.0 : uniform(0.0, max);
    }
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace entropot::testing
