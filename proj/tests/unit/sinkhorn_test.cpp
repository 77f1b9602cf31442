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
#include <cstdint>

#include "entropot/epsilon.hpp"
#include "entropot/invariants.hpp"
#include "entropot/oracle.hpp"
#include "entropot/sinkhorn.hpp"
#include "entropot/transforms.hpp"
#include "support/closed_form.hpp"
#include "support/generators.hpp"

namespace entropot {
namespace {

SolverConfig config_with(double delta) {
  SolverConfig c;
  c.delta = delta;
  return c;
}

TEST(SinkhornTest, ZeroCostConvergesImmediately) {
  testing::Gen gen(1);
  const Vector a = gen.probability(6);
  const Vector b = gen.probability(6);
  const Problem p(a, b, Matrix::Zero(6, 6), 0.37);
  const SolveResult r = sinkhorn_solve(p, config_with(1e-9));
  EXPECT_TRUE(r.converged());
  EXPECT_LE(r.iterations, 2);
  EXPECT_LT((r.plan.matrix() - a * b.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SinkhornTest, SymmetricClosedForm) {
  const SolveResult r = sinkhorn_solve(testing::symmetric_2x2(), config_with(1e-10));
  ASSERT_TRUE(r.converged());
  EXPECT_LT((r.plan.matrix() - testing::symmetric_2x2_plan()).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LE(r.violation.sum(), 1e-10);
}

TEST(SinkhornTest, IterationBoundExample) {
  EXPECT_EQ(sinkhorn_iteration_bound(1.0, 0.25, 0.1), 162);
  testing::Gen gen(2);
  for (int c = 0; c < 10; ++c) {
    const Index n = gen.integer(2, 12);
    Matrix cost = gen.cost(n, n);
    cost /= cost.maxCoeff();
    const Problem p(gen.probability(n), gen.probability(n), cost, 0.25);
    const SolveResult r = sinkhorn_solve(p, config_with(0.1));
    EXPECT_TRUE(r.converged());
    EXPECT_LE(r.iterations, 162);
  }
}

TEST(SinkhornTest, BoundSaturates) {
  EXPECT_EQ(sinkhorn_iteration_bound(1.0, 1e-300, 1e-300), INT64_MAX);
}

TEST(SinkhornTest, ParityAndAlternatingExactness) {
  testing::Gen gen(3);
  const Index n = 8;
  const Problem p(gen.probability(n), gen.probability(n), gen.cost(n, n), 0.1);
  SolverConfig config = config_with(1e-8);
  config.record_trace = true;
  const SolveResult r = sinkhorn_solve(p, config);
  ASSERT_TRUE(r.converged());
  ASSERT_EQ(static_cast<std::int64_t>(r.trace.size()), r.iterations + 1);
  EXPECT_FALSE(r.trace[0].updated_side.has_value());
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    const IterationRecord& rec = r.trace[k];
    EXPECT_EQ(rec.k, static_cast<std::int64_t>(k));
    // Iterate k was produced by the update at k - 1: rows on even k - 1.
    const Side expected = (k - 1) % 2 == 0 ? Side::Row : Side::Column;
    EXPECT_EQ(*rec.updated_side, expected);
    if (expected == Side::Row) {
      EXPECT_LE(rec.row_violation, 1e-10);
    } else {
      EXPECT_LE(rec.col_violation, 1e-10);
    }
    if (k >= 2) {
      EXPECT_GE(rec.dual_value, r.trace[k - 1].dual_value - 1e-12);
      const double range = p.cost_max() - p.cost_min();
      EXPECT_LE(rec.equicontinuity_f, range + 1e-9);
      EXPECT_LE(rec.equicontinuity_g, range + 1e-9);
    }
  }
  EXPECT_LE(r.trace.back().row_violation + r.trace.back().col_violation, 1e-8);
}

TEST(SinkhornTest, ArbitraryInitialization) {
  testing::Gen gen(4);
  const Index n = 10;
  const Problem p(gen.probability(n), gen.probability(n), gen.cost(n, n, 2.0), 0.2);
  const DualPotentials init{gen.positive(n, -5, 5), gen.positive(n, -5, 5)};
  SolverConfig config = config_with(1e-9);
  SinkhornInvariantMonitor monitor(p);
  config.observer = monitor.observer();
  const SolveResult r = sinkhorn_solve(p, config, init);
  EXPECT_TRUE(r.converged());
  EXPECT_TRUE(monitor.report().ok());
  const SolveResult plain = sinkhorn_solve(p, config_with(1e-9));
  EXPECT_LT((r.plan.matrix() - plain.plan.matrix()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(SinkhornTest, IterationCapIsReported) {
  testing::Gen gen(5);
  const Index n = 10;
  const Problem p(gen.probability(n), gen.probability(n), gen.cost(n, n), 0.01);
  SolverConfig config = config_with(1e-14);
  config.max_iterations = 3;
  const SolveResult r = sinkhorn_solve(p, config);
  EXPECT_EQ(r.termination, Termination::IterationCap);
  EXPECT_EQ(r.iterations, 3);
  EXPECT_FALSE(r.converged());
}

TEST(SinkhornTest, RejectsBadConfigAndZeroMarginals) {
  const Problem p = testing::symmetric_2x2();
  EXPECT_THROW(sinkhorn_solve(p, config_with(0.0)), InvalidArgument);
  EXPECT_THROW(sinkhorn_solve(p, config_with(-1.0)), InvalidArgument);
  SolverConfig tiny_cap = config_with(1e-3);
  tiny_cap.max_iterations = 1;
  EXPECT_THROW(sinkhorn_solve(p, tiny_cap), InvalidArgument);
  Vector a(2);
  a << 1.0, 0.0;
  const Problem zero(a, Vector::Constant(2, 0.5), p.cost(), 1.0);
  EXPECT_THROW(sinkhorn_solve(zero, config_with(1e-3)), InvalidArgument);
}

TEST(LiftTest, Examples) {
  Vector a(2);
  a << 1.0, 0.0;
  const auto [la, lb] = lift_marginals(a, a, 0.8);
  EXPECT_NEAR(la[0], 0.95, 1e-15);
  EXPECT_NEAR(la[1], 0.05, 1e-15);
  EXPECT_GE(la.minCoeff(), 0.8 / 16 - 1e-16);
  EXPECT_NEAR(la.sum(), 1.0, 1e-15);
}

TEST(LiftTest, BoundsOnRandomInputs) {
  testing::Gen gen(6);
  for (int c = 0; c < 200; ++c) {
    const Index n = gen.integer(1, 30);
    const double delta = c == 0 ? 1e-6 : gen.uniform(1e-6, 1.99);
    const Vector a = gen.probability(n, 0.3);
    const Vector b = gen.probability(n, 0.3);
    const auto [la, lb] = lift_marginals(a, b, delta);
    EXPECT_LE((la - a).lpNorm<1>(), delta / 4 + 1e-15);
    EXPECT_LE((lb - b).lpNorm<1>(), delta / 4 + 1e-15);
    EXPECT_GE(la.minCoeff(), delta / (8.0 * static_cast<double>(n)) * (1 - 1e-12));
    EXPECT_GE(lb.minCoeff(), delta / (8.0 * static_cast<double>(n)) * (1 - 1e-12));
    EXPECT_NEAR(la.sum(), 1.0, 1e-15);
    EXPECT_NEAR(lb.sum(), 1.0, 1e-15);
  }
}

TEST(LiftTest, SmallDelta) {
  testing::Gen gen(7);
  const Vector a = gen.probability(10);
  const auto [la, lb] = lift_marginals(a, a, 1e-6);
  EXPECT_LE((la - a).lpNorm<1>(), 2.5e-7);
}

TEST(LiftTest, RejectsDeltaOutOfRange) {
  const Vector a = Vector::Constant(2, 0.5);
  EXPECT_THROW(lift_marginals(a, a, 0.0), InvalidArgument);
  EXPECT_THROW(lift_marginals(a, a, 2.0), InvalidArgument);
  EXPECT_THROW(lift_marginals(a, a, -0.5), InvalidArgument);
}

TEST(EpsilonTest, SinkhornParameters) {
  testing::Gen gen(8);
  const Index n = 100;
  Matrix c = gen.cost(n, n);
  c /= c.maxCoeff();
  const EpsilonSetup s = epsilon_setup(Algorithm::Sinkhorn, gen.probability(n), gen.probability(n),
                                       c, 0.1, Variant::Vanilla);
  EXPECT_NEAR(s.gamma, 0.1 / (4 * std::log(100.0)), 1e-15);
  EXPECT_NEAR(s.gamma, 0.005429, 1e-6);
  EXPECT_NEAR(s.delta, 0.0125, 1e-15);
  EXPECT_EQ(s.iteration_bound, sinkhorn_iteration_bound(1.0, s.gamma, s.delta));
}

TEST(EpsilonTest, VanillaAndLiftedCertified) {
  testing::Gen gen(9);
  const Index n = 16;
  const Vector a = gen.probability(n);
  const Vector b = gen.probability(n);
  const Matrix c = gen.point_cost(n);
  const double eps = 0.1 * c.maxCoeff();
  const Problem original(a, b, c, 1.0);
  const double exact = exact_ot(a, b, c).cost;
  for (Variant v : {Variant::Vanilla, Variant::Lifted}) {
    const EpsilonSolveResult r = sinkhorn_epsilon_solve(a, b, c, eps, v);
    ASSERT_TRUE(r.result.converged());
    const Certificate cert = certify(r.result, original, eps, Algorithm::Sinkhorn, exact);
    EXPECT_TRUE(cert.satisfied) << to_string(v) << " gap " << cert.gap;
    EXPECT_LE(r.result.iterations, r.iteration_bound);
  }
}

TEST(EpsilonTest, HugeEpsilonStopsAtFirstCheck) {
  testing::Gen gen(10);
  const Index n = 5;
  const Matrix c = gen.cost(n, n);
  const EpsilonSolveResult r = sinkhorn_epsilon_solve(gen.probability(n), gen.probability(n), c,
                                                      17.0 * c.maxCoeff(), Variant::Vanilla);
  EXPECT_GT(r.delta, 2.0);
  EXPECT_TRUE(r.result.converged());
  EXPECT_LE(r.result.iterations, 1);
}

TEST(EpsilonTest, ZeroCostShortCircuits) {
  testing::Gen gen(11);
  const Vector a = gen.probability(4);
  const Vector b = gen.probability(4);
  const EpsilonSolveResult r = sinkhorn_epsilon_solve(a, b, Matrix::Zero(4, 4), 0.1,
                                                      Variant::Vanilla);
  EXPECT_FALSE(r.note.empty());
  EXPECT_TRUE(r.result.converged());
  EXPECT_EQ(r.result.iterations, 0);
  EXPECT_LT((r.result.plan.matrix() - a * b.transpose()).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(EpsilonTest, ZeroMarginalsAreCompacted) {
  testing::Gen gen(12);
  const Index n = 8;
  const Vector a = gen.probability(n, 0.4);
  const Vector b = gen.probability(n, 0.4);
  const Matrix c = gen.point_cost(n);
  const double eps = 0.1 * c.maxCoeff();
  const EpsilonSolveResult r = sinkhorn_epsilon_solve(a, b, c, eps, Variant::Vanilla);
  ASSERT_TRUE(r.result.converged());
  EXPECT_EQ(r.result.plan.rows(), n);
  for (Index i = 0; i < n; ++i) {
    if (a[i] == 0.0) {
      EXPECT_EQ(r.result.plan.row_sums()[i], 0.0);
    }
  }
  for (Index j = 0; j < n; ++j) {
    if (b[j] == 0.0) {
      EXPECT_EQ(r.result.plan.col_sums()[j], 0.0);
    }
  }
  EXPECT_LE(r.result.violation.sum(), r.delta);
  const Certificate cert =
      certify(r.result, Problem(a, b, c, r.gamma), eps, Algorithm::Sinkhorn);
  EXPECT_TRUE(cert.satisfied);
}

TEST(EpsilonTest, RejectsBadArguments) {
  const Vector one = Vector::Ones(1);
  EXPECT_THROW(sinkhorn_epsilon_solve(one, one, Matrix::Ones(1, 1), 0.1, Variant::Vanilla),
               InvalidArgument);
  const Vector half = Vector::Constant(2, 0.5);
  EXPECT_THROW(sinkhorn_epsilon_solve(half, half, Matrix::Ones(2, 2), 0.0, Variant::Vanilla),
               InvalidArgument);
  EXPECT_THROW(sinkhorn_epsilon_solve(half, half, Matrix::Ones(2, 2), -1.0, Variant::Vanilla),
               InvalidArgument);
}

TEST(SinkhornProperty, MonitorsStayClean) {
  testing::Gen gen(301);
  for (int c = 0; c < 15; ++c) {
    const Index n = gen.integer(2, 20);
    const Matrix cost = gen.cost(n, n, gen.uniform(0.5, 3.0));
    const Problem p(gen.probability(n), gen.probability(n), cost,
                    gen.uniform(0.05, 1.0) * cost.maxCoeff());
    MonitorOptions mo;
    mo.reference = reference_dual_optimum(p);
    mo.exact_cost = exact_ot(p.a(), p.b(), p.cost()).cost;
    SinkhornInvariantMonitor monitor(p, mo);
    SolverConfig config = config_with(gen.uniform(1e-6, 1e-2));
    config.observer = monitor.observer();
    const SolveResult r = sinkhorn_solve(p, config);
    monitor.finish(r, sinkhorn_iteration_bound(p.cost_inf_norm(), p.gamma(), config.delta));
    EXPECT_TRUE(monitor.report().ok())
        << "case " << c << ": " << monitor.report().violations.front().check;
    EXPECT_GT(monitor.report().total_evaluations(), 0);
  }
}

}  // namespace
}  // namespace entropot
