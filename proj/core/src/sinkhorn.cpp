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

#include "entropot/sinkhorn.hpp"

#include <cmath>
#include <limits>

#include "entropot/transforms.hpp"
#include "solver_common.hpp"
#include "transforms_internal.hpp"

namespace entropot {
namespace {

// h(f, g) from a plan generated by (f, g): the kernel mass is the plan total.
double dual_from_plan(const Problem& problem, const DualPotentials& pot,
                      const TransportPlan& plan) {
  CompensatedSum s;
  for (Index i = 0; i < pot.f.size(); ++i) s.add(pot.f[i] * problem.a()[i]);
  for (Index j = 0; j < pot.g.size(); ++j) s.add(pot.g[j] * problem.b()[j]);
  s.add(-problem.gamma() * plan.total());
  return s.value();
}

}  // namespace

SolveResult sinkhorn_solve(const Problem& problem, const SolverConfig& config,
                           const std::optional<DualPotentials>& init) {
  internal::check_solver_config(config);
  if (problem.has_zero_marginal()) {
    throw InvalidArgument("sinkhorn_solve: marginals must be strictly positive; compact first");
  }
  const std::int64_t cap = config.max_iterations.value_or(internal::times_ten(
      sinkhorn_iteration_bound(problem.cost_inf_norm(), problem.gamma(), config.delta)));

  SolveResult result;
  result.potentials = init.value_or(DualPotentials::from_marginals(problem));
  DualPotentials& pot = result.potentials;
  if (pot.f.size() != problem.rows() || pot.g.size() != problem.cols()) {
    throw InvalidArgument("sinkhorn_solve: initial potentials have the wrong length");
  }

  const bool telemetry = config.record_trace || static_cast<bool>(config.observer);
  auto emit = [&](std::int64_t k, const TransportPlan& plan, const MarginalViolation& viol,
                  std::optional<Side> side) {
    if (config.record_trace) {
      const Equicontinuity eq = equicontinuity_check(problem, pot);
      result.trace.push_back({k, dual_from_plan(problem, pot, plan), viol.row, viol.col, side,
                              std::nullopt, eq.f, eq.g});
    }
    if (config.observer) {
      config.observer(IterationState{k, problem, pot, plan.row_sums(), plan.col_sums(), viol, side,
                                     std::nullopt, &plan, std::nullopt});
    }
  };

  if (telemetry) {
    const TransportPlan plan0 = plan_from_potentials(problem, pot);
    emit(0, plan0, marginal_violations(plan0, problem), std::nullopt);
  }

  internal::TransformWorkspace ws;
  std::int64_t k = 0;
  while (true) {
    Side side;
    if (k % 2 == 0) {
      internal::row_transform(problem.cost(), problem.gamma(), pot.g, problem.a(), pot.f, ws);
      side = Side::Row;
    } else {
      internal::col_transform(problem.cost(), problem.gamma(), pot.f, problem.b(), pot.g, ws);
      side = Side::Column;
    }
    ++k;
    result.plan = plan_from_potentials(problem, pot);
    result.violation = marginal_violations(result.plan, problem);
    if (telemetry) emit(k, result.plan, result.violation, side);
    if (result.violation.sum() <= config.delta) {
      result.termination = Termination::Converged;
      break;
    }
    if (k >= cap) {
      result.termination = Termination::IterationCap;
      break;
    }
  }
  result.iterations = k;
  return result;
}

std::pair<Vector, Vector> lift_marginals(const Vector& a, const Vector& b, double delta) {
  if (!(delta > 0.0 && delta < 2.0)) {
    throw InvalidArgument("lift_marginals: delta must lie in (0, 2)");
  }
  check_probability_vector(a, "a");
  check_probability_vector(b, "b");
  auto lift = [delta](const Vector& x) {
    const double n = static_cast<double>(x.size());
    Vector y = (1.0 - delta / 8.0) * (x.array() + delta / (n * (8.0 - delta))).matrix();
    return Vector(y / compensated_sum(y));
  };
  return {lift(a), lift(b)};
}

EpsilonSolveResult sinkhorn_epsilon_solve(const Vector& a, const Vector& b, const Matrix& cost,
                                          double epsilon, Variant variant,
                                          const EpsilonOptions& options) {
  return internal::run_epsilon(
      epsilon_setup(Algorithm::Sinkhorn, a, b, cost, epsilon, variant), a, b, options,
      [](const Problem& p, const SolverConfig& c) { return sinkhorn_solve(p, c); });
}

}  // namespace entropot
