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

// Parameter choice for a target accuracy epsilon:
//   Sinkhorn    gamma = eps / (4 log n), delta = eps / (8 ||C||_inf)
//   Greenkhorn  gamma = eps / (6 log n), delta = min(1, eps / (8 ||C||_inf))

#pragma once

#include <optional>
#include <utility>

#include "entropot/core.hpp"
#include "entropot/solve_types.hpp"

namespace entropot {

struct EpsilonSetup {
  double gamma = 0.0;
  double delta = 0.0;  // 0 when C == 0
  double cost_inf_norm = 0.0;
  bool zero_cost = false;
  Vector a_used;  // lifted for Variant::Lifted
  Vector b_used;
  std::int64_t iteration_bound = 0;
  // The instance the solver iterates on: (a_used, b_used, C, gamma) with zero
  // marginal entries removed. Empty when C == 0.
  std::optional<Problem> problem;
  std::optional<CompactionMap> compaction;  // set when entries were removed
};

// Throws InvalidArgument for n < 2, a non-square instance, eps <= 0 or
// invalid marginals/cost. The lifted variant requires delta < 2.
EpsilonSetup epsilon_setup(Algorithm algorithm, const Vector& a, const Vector& b,
                           const Matrix& cost, double epsilon, Variant variant);

}  // namespace entropot
