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

// Greedy coordinate ascent on the dual. Each iteration picks the row I and
// column J with the largest mismatch rho(a_i, (P 1)_i) and rho(b_j, (P^T 1)_j)
// (lowest index on ties) and rebalances the row if its mismatch is strictly
// larger, the column otherwise. Row and column sums are maintained
// incrementally in O(n) and re-synchronized with a full recomputation every
// max(rows, cols) iterations.

#pragma once

#include <utility>

#include "entropot/sinkhorn.hpp"
#include "entropot/solve_types.hpp"

namespace entropot {

// Starts from (gamma log a, gamma log b). Zero marginal entries are removed
// before iterating; the returned plan and potentials are on the full index
// space (-inf potentials at removed coordinates) while observers and the trace
// see the compacted instance. Termination is confirmed against a freshly
// built plan, so a converged result always satisfies violation <= delta.
SolveResult greenkhorn_solve(const Problem& problem, const SolverConfig& config);

// gamma = eps / (6 log n), delta = min(1, eps / (8 ||C||_inf)).
EpsilonSolveResult greenkhorn_epsilon_solve(const Vector& a, const Vector& b, const Matrix& cost,
                                            double epsilon, Variant variant,
                                            const EpsilonOptions& options = {});

struct PinskerSides {
  double lhs = 0.0;  // ||x - y||_1^2
  double rhs = 0.0;  // 7 sum_i rho(x_i, y_i)
};

// Both sides of ||x - y||_1^2 <= 7 sum rho(x_i, y_i), which holds whenever the
// rho sum is at most 1. Filtering on that condition is left to the caller.
PinskerSides generalized_pinsker_check(const Vector& x, const Vector& y);

}  // namespace entropot
