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

#pragma once

#include <cstdint>
#include <utility>

#include "entropot/epsilon.hpp"
#include "entropot/sinkhorn.hpp"
#include "entropot/solve_types.hpp"

namespace entropot::internal {

std::int64_t times_ten(std::int64_t x);

void check_solver_config(const SolverConfig& config);

// Converged result holding a b^T with potentials (gamma log a, gamma log b),
// for C == 0.
SolveResult zero_cost_result(const Vector& a, const Vector& b, double gamma);

// Runs `solve` on setup.problem and maps the result back to the full index
// space, or short-circuits for C == 0.
template <typename Solve>
EpsilonSolveResult run_epsilon(EpsilonSetup setup, const Vector& a, const Vector& b,
                               const EpsilonOptions& options, Solve solve) {
  EpsilonSolveResult out;
  out.gamma = setup.gamma;
  out.delta = setup.delta;
  out.a_used = setup.a_used;
  out.b_used = setup.b_used;
  out.iteration_bound = setup.iteration_bound;
  if (setup.zero_cost) {
    out.result = zero_cost_result(a, b, setup.gamma);
    out.note = "cost matrix is zero; returning a b^T";
    return out;
  }
  SolverConfig config;
  config.delta = setup.delta;
  config.max_iterations = options.max_iterations;
  config.record_trace = options.record_trace;
  config.observer = options.observer;
  SolveResult r = solve(*setup.problem, config);
  if (setup.compaction) {
    r.plan = embed_plan(r.plan, *setup.compaction);
    r.potentials = embed_potentials(r.potentials, *setup.compaction);
    r.violation = marginal_violations(r.plan, setup.a_used, setup.b_used);
    out.note = "zero marginal entries removed before iterating";
  }
  out.result = std::move(r);
  out.problem = std::move(setup.problem);
  return out;
}

}  // namespace entropot::internal
