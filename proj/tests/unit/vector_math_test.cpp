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

#include <gtest/gtest.h>

#include <cmath>

#include "support/generators.hpp"
#include "vector_math.hpp"

namespace entropot {
namespace {

TEST(VectorMathTest, ExpShiftedMatchesScalar) {
  testing::Gen gen(61);
  for (Index n : {1, 3, 8, 37, 256}) {
    const Vector x = gen.positive(n, -700.0, 10.0);
    Vector y = x;
    internal::exp_shifted(y.data(), n, 2.5);
    Vector shifts = gen.positive(n, -5.0, 5.0);
    Vector z = x;
    internal::exp_shifted(z.data(), shifts.data(), n);
    for (Index i = 0; i < n; ++i) {
      const double want = std::exp(x[i] - 2.5);
      EXPECT_LE(std::abs(y[i] - want), 4e-16 * want) << internal::vector_math_backend();
      const double want2 = std::exp(x[i] - shifts[i]);
      EXPECT_LE(std::abs(z[i] - want2), 4e-16 * want2);
    }
  }
}

TEST(VectorMathTest, RhoArrayMatchesScalar) {
  testing::Gen gen(62);
  const Index n = 4096;
  Vector x(n);
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    x[i] = gen.coin(0.05) ? 0.0 : std::pow(10.0, gen.uniform(-20.0, 0.0));
    switch (gen.integer(0, 3)) {
      case 0: y[i] = x[i] * (1.0 + gen.uniform(-0.6, 0.6)); break;
      case 1: y[i] = std::pow(10.0, gen.uniform(-25.0, 0.0)); break;
      case 2: y[i] = x[i] * (1.0 + gen.uniform(-1e-8, 1e-8)); break;
      default: y[i] = gen.coin(0.5) ? 0.0 : x[i]; break;
    }
  }
  Vector out(n);
  internal::rho_array(x.data(), y.data(), out.data(), n);
  for (Index i = 0; i < n; ++i) {
    const double want = rho(x[i], y[i]);
    if (std::isinf(want)) {
      EXPECT_TRUE(std::isinf(out[i])) << x[i] << " " << y[i];
    } else {
      // Both forms cancel; the error scales with the inputs, not the result.
      EXPECT_NEAR(out[i], want, 1e-12 * want + 1e-15 * (x[i] + y[i]))
          << x[i] << " " << y[i];
      EXPECT_GE(out[i], 0.0);
    }
  }
}

}  // namespace
}  // namespace entropot
