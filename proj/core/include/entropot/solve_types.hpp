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
#include <functional>
#include <optional>
#include <vector>

#include "entropot/core.hpp"

namespace entropot {

enum class Side { Row, Column };
enum class Termination { Converged, IterationCap };
enum class Variant { Vanilla, Lifted };
enum class Algorithm { Sinkhorn, Greenkhorn };

const char* to_string(Side side);
const char* to_string(Termination termination);
const char* to_string(Variant variant);
const char* to_string(Algorithm algorithm);

// Telemetry for one iterate (f_k, g_k). k = 0 is the initial point and has
// no updated side.
struct IterationRecord {
  std::int64_t k = 0;
  double dual_value = 0.0;
  double row_violation = 0.0;
  double col_violation = 0.0;
  std::optional<Side> updated_side;
  std::optional<Index> updated_index;  // Greenkhorn only
  double equicontinuity_f = 0.0;
  double equicontinuity_g = 0.0;
};

// Live view of the solver state handed to observers after every iterate,
// including k = 0. References are only valid during the callback.
struct IterationState {
  std::int64_t k;
  const Problem& problem;
  const DualPotentials& potentials;
  const Vector& row_sums;  // P_k 1
  const Vector& col_sums;  // P_k^T 1
  MarginalViolation violation;
  std::optional<Side> updated_side;
  std::optional<Index> updated_index;
  // Freshly reconstructed P_k (Sinkhorn); null for Greenkhorn.
  const TransportPlan* plan = nullptr;
  // Greenkhorn: relative disagreement between the incremental sums and a full
  // recomputation, set on the iterations where the recomputation happened.
  std::optional<double> cache_drift;
};

using IterationObserver = std::function<void(const IterationState&)>;

// Configuration shared by Sinkhorn and Greenkhorn. gamma lives in Problem.
struct SolverConfig {
  double delta = 1e-6;  // l1 termination threshold on the violation sum
  // Defaults to 10x the applicable iteration bound.
  std::optional<std::int64_t> max_iterations;
  bool record_trace = false;
  IterationObserver observer;
};

struct SolveResult {
  TransportPlan plan;
  DualPotentials potentials;
  std::int64_t iterations = 0;
  std::vector<IterationRecord> trace;
  Termination termination = Termination::IterationCap;
  MarginalViolation violation;  // of the returned plan
  double max_cache_drift = 0.0;  // Greenkhorn only

  bool converged() const { return termination == Termination::Converged; }
};

// Regularized dual optimum used as ground truth by the invariant monitors.
struct ReferenceOptimum {
  DualPotentials potentials;
  double value = 0.0;            // h(f*, g*)
  double achieved_violation = 0.0;
  std::int64_t iterations = 0;
};

// 2 + 2 ceil(2 ||C||_inf / (gamma delta)), saturating at INT64_MAX.
std::int64_t sinkhorn_iteration_bound(double cost_inf_norm, double gamma, double delta);

// 2 ceil(56 n ||C||_inf / (gamma delta)) + 2 ceil(4 n ||C||_inf / gamma).
std::int64_t greenkhorn_iteration_bound(Index n, double cost_inf_norm, double gamma, double delta);

}  // namespace entropot
