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

// Sinkhorn's alternating projections carried out on the dual potentials:
// even k rebalances every row (f <- bar transform of g), odd k every column
// (g <- transform of f). P_k is rebuilt from (f_k, g_k) after every update and
// the loop stops once ||P_k 1 - a||_1 + ||P_k^T 1 - b||_1 <= delta.

#pragma once

#include <optional>
#include <string>
#include <utility>

#include "entropot/solve_types.hpp"

namespace entropot {

// Requires a > 0 and b > 0 (compact first). `init` defaults to
// (gamma log a, gamma log b); any finite pair is accepted. Hitting the
// iteration cap is reported through SolveResult::termination.
SolveResult sinkhorn_solve(const Problem& problem, const SolverConfig& config,
                           const std::optional<DualPotentials>& init = std::nullopt);

// (1 - delta/8) ((a, b) + delta / (n (8 - delta)) (1, 1)), renormalized so each
// output sums to 1. Every entry is at least delta / (8 n).
std::pair<Vector, Vector> lift_marginals(const Vector& a, const Vector& b, double delta);

struct EpsilonOptions {
  bool record_trace = false;
  std::optional<std::int64_t> max_iterations;
  IterationObserver observer;
};

// Result of a run configured from a target accuracy epsilon. `result` lives on
// the full index space of the input; trace and observer callbacks refer to
// `problem`, the instance the iteration actually ran on (lifted and/or
// compacted).
struct EpsilonSolveResult {
  SolveResult result;
  double gamma = 0.0;
  double delta = 0.0;
  Vector a_used;
  Vector b_used;
  std::int64_t iteration_bound = 0;
  std::optional<Problem> problem;  // empty when C == 0 short-circuits
  std::string note;
};

// gamma = eps / (4 log n), delta = eps / (8 ||C||_inf). Throws InvalidArgument
// for n < 2 or eps <= 0. C == 0 returns a b^T immediately with a note.
EpsilonSolveResult sinkhorn_epsilon_solve(const Vector& a, const Vector& b, const Matrix& cost,
                                          double epsilon, Variant variant,
                                          const EpsilonOptions& options = {});

}  // namespace entropot
