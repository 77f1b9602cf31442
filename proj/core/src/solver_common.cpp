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

#include "solver_common.hpp"

#include <cmath>
#include <limits>

namespace entropot::internal {

std::int64_t times_ten(std::int64_t x) {
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  return x > kMax / 10 ? kMax : 10 * x;
}

void check_solver_config(const SolverConfig& config) {
  if (!(config.delta > 0.0) || !std::isfinite(config.delta)) {
    throw InvalidArgument("solver: delta must be positive and finite");
  }
  if (config.max_iterations && *config.max_iterations < 2) {
    throw InvalidArgument("solver: max_iterations must be at least 2");
  }
}

SolveResult zero_cost_result(const Vector& a, const Vector& b, double gamma) {
  SolveResult r;
  r.plan = TransportPlan::outer(a, b);
  r.potentials.f = gamma * a.array().log().matrix();
  r.potentials.g = gamma * b.array().log().matrix();
  r.violation = marginal_violations(r.plan, a, b);
  r.termination = Termination::Converged;
  return r;
}

}  // namespace entropot::internal
