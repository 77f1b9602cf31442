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

#include "entropot/transforms.hpp"
#include "support/closed_form.hpp"
#include "support/generators.hpp"

namespace entropot {
namespace {

Vector gamma_log(const Vector& v, double gamma) { return gamma * v.array().log().matrix(); }

TEST(TransformTest, ZeroCostReturnsLogMarginals) {
  testing::Gen gen(1);
  const Vector a = gen.probability(5);
  const Vector b = gen.probability(5);
  const double gamma = 0.3;
  const Problem p(a, b, Matrix::Zero(5, 5), gamma);
  const Vector g = c_gamma_transform(p, gamma_log(a, gamma));
  EXPECT_LT((g - gamma_log(b, gamma)).cwiseAbs().maxCoeff(), 1e-14);
  const Vector f = c_gamma_bar_transform(p, gamma_log(b, gamma));
  EXPECT_LT((f - gamma_log(a, gamma)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(TransformTest, TightnessInstance) {
  const double m = 2.5;
  const double gamma = 0.7;
  Matrix c(2, 2);
  c << m, 0.0, m, 0.0;
  const Vector half = Vector::Constant(2, 0.5);
  const Problem p(half, half, c, gamma);
  const Vector g = c_gamma_transform(p, Vector::Zero(2));
  const Vector shifted = g - gamma_log(half, gamma);
  EXPECT_NEAR(shifted[0], m - gamma * std::log(2.0), 1e-12);
  EXPECT_NEAR(shifted[1], -gamma * std::log(2.0), 1e-12);
  EXPECT_NEAR(oscillation(g, gamma_log(half, gamma)), m, 1e-10);
  EXPECT_NEAR(oscillation(g, gamma_log(half, gamma)), p.cost_inf_norm(), 1e-10);
}

TEST(TransformTest, MaximizesOverG) {
  testing::Gen gen(2);
  const Index n = 6;
  const Problem p(gen.probability(n), gen.probability(n), gen.cost(n, n), 0.25);
  const Vector f = gen.positive(n, -1, 1);
  const Vector best = c_gamma_transform(p, f);
  const double h_best = dual_objective(p, {f, best});
  for (int probe = 0; probe < 100; ++probe) {
    const Vector g = best + gen.positive(n, -0.5, 0.5);
    EXPECT_GT(h_best, dual_objective(p, {f, g}));
  }
  // The maximizer zeroes the column gradient.
  const TransportPlan plan = plan_from_potentials(p, {f, best});
  EXPECT_LT((plan.col_sums() - p.b()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(TransformTest, ZeroMarginalGivesNegativeInfinity) {
  Vector a(3);
  a << 0.5, 0.5, 0.0;
  Vector b(3);
  b << 0.0, 0.4, 0.6;
  testing::Gen gen(3);
  const Problem p(a, b, gen.cost(3, 3), 0.5);
  const Vector g = c_gamma_transform(p, Vector::Zero(3));
  EXPECT_EQ(g[0], -kInfinity);
  EXPECT_TRUE(std::isfinite(g[1]));
  const Vector f = c_gamma_bar_transform(p, Vector::Zero(3));
  EXPECT_EQ(f[2], -kInfinity);
}

TEST(TransformTest, RejectsNonFinite) {
  const Problem p = testing::symmetric_2x2();
  Vector bad(2);
  bad << 0.0, std::nan("");
  EXPECT_THROW(c_gamma_transform(p, bad), InvalidArgument);
  EXPECT_THROW(c_gamma_bar_transform(p, bad), InvalidArgument);
  EXPECT_THROW(c_gamma_transform(p, Vector::Zero(3)), InvalidArgument);
}

TEST(TransformTest, TransposeDuality) {
  testing::Gen gen(4);
  const Index n = 7;
  const Vector a = gen.probability(n);
  const Vector b = gen.probability(n);
  const Matrix c = gen.cost(n, n, 2.0);
  const Problem p(a, b, c, 0.2);
  const Problem q(b, a, c.transpose(), 0.2);
  const Vector g = gen.positive(n, -1, 1);
  EXPECT_LT((c_gamma_bar_transform(p, g) - c_gamma_transform(q, g)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(TransformTest, FixedPointAtSymmetricOptimum) {
  const Problem p = testing::symmetric_2x2();
  const DualPotentials opt = testing::symmetric_2x2_potentials();
  EXPECT_LT((c_gamma_bar_transform(p, opt.g) - opt.f).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((c_gamma_transform(p, opt.f) - opt.g).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(OscillationTest, Examples) {
  Vector ref(3);
  ref << 0.1, -0.2, 0.3;
  EXPECT_EQ(oscillation(ref, ref), 0.0);
  Vector d(3);
  d << 3, 1, 2;
  EXPECT_NEAR(oscillation(ref + d, ref), 2.0, 1e-15);
  EXPECT_NEAR(oscillation((ref + d).array() + 5.0, ref), 2.0, 1e-14);
  EXPECT_THROW(oscillation(ref, Vector::Zero(2)), InvalidArgument);
}

TEST(EquicontinuityTest, ConstantCostHasZeroOscillation) {
  testing::Gen gen(5);
  const Index n = 5;
  const Problem p(gen.probability(n), gen.probability(n), Matrix::Constant(n, n, 1.3), 0.4);
  const Vector g = c_gamma_transform(p, gen.positive(n, -2, 2));
  const Vector f = c_gamma_bar_transform(p, g);
  const Equicontinuity e = equicontinuity_check(p, {f, g});
  EXPECT_NEAR(e.f, 0.0, 1e-12);
  EXPECT_NEAR(e.g, 0.0, 1e-12);
}

TEST(TransformProperty, OscillationBound) {
  testing::Gen gen(201);
  for (int c = 0; c < 200; ++c) {
    const Index n = gen.integer(1, 16);
    const Problem p(gen.probability(n), gen.probability(n), gen.cost(n, n, gen.uniform(0.1, 5)),
                    gen.uniform(0.01, 2.0));
    const double range = p.cost_max() - p.cost_min();
    const Vector f = gen.positive(n, -10, 10);
    const Vector g = c_gamma_transform(p, f);
    EXPECT_LE(oscillation(g, gamma_log(p.b(), p.gamma())), range + 1e-9);
    const Vector f2 = c_gamma_bar_transform(p, gen.positive(n, -10, 10));
    EXPECT_LE(oscillation(f2, gamma_log(p.a(), p.gamma())), range + 1e-9);
  }
}

TEST(TransformProperty, Translation) {
  testing::Gen gen(202);
  for (int c = 0; c < 100; ++c) {
    const Index n = gen.integer(1, 12);
    const Problem p(gen.probability(n), gen.probability(n), gen.cost(n, n), gen.uniform(0.05, 1));
    const Vector f = gen.positive(n, -1, 1);
    const double eta = gen.uniform(-5, 5);
    const Vector moved = c_gamma_transform(p, f.array() + eta);
    const Vector expected = c_gamma_transform(p, f).array() - eta;
    EXPECT_LT((moved - expected).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(TransformProperty, BarTransformImprovesDual) {
  testing::Gen gen(203);
  for (int c = 0; c < 100; ++c) {
    const Index n = gen.integer(1, 12);
    const Problem p(gen.probability(n), gen.probability(n), gen.cost(n, n), gen.uniform(0.05, 1));
    const Vector f = gen.positive(n, -1, 1);
    const Vector g = gen.positive(n, -1, 1);
    const double h = dual_objective(p, {f, g});
    EXPECT_GE(dual_objective(p, {c_gamma_bar_transform(p, g), g}), h - 1e-12);
  }
}

}  // namespace
}  // namespace entropot
