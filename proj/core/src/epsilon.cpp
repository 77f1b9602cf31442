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

#include "entropot/epsilon.hpp"

#include <algorithm>
#include <cmath>

#include "entropot/sinkhorn.hpp"

namespace entropot {

EpsilonSetup epsilon_setup(Algorithm algorithm, const Vector& a, const Vector& b,
                           const Matrix& cost, double epsilon, Variant variant) {
  const Index n = a.size();
  if (n < 2) throw InvalidArgument("epsilon solve: n must be at least 2");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon solve: epsilon must be positive and finite");
  }
  if (b.size() != n || cost.rows() != n || cost.cols() != n) {
    throw InvalidArgument("epsilon solve: a, b and C must describe a square n x n instance");
  }
  // Validates marginals and cost.
  const Problem probe(a, b, cost, 1.0);

  const bool sinkhorn = algorithm == Algorithm::Sinkhorn;
  EpsilonSetup s;
  s.cost_inf_norm = probe.cost_inf_norm();
  s.gamma = epsilon / ((sinkhorn ? 4.0 : 6.0) * std::log(static_cast<double>(n)));
  s.a_used = a;
  s.b_used = b;
  if (s.cost_inf_norm == 0.0) {
    s.zero_cost = true;
    return s;
  }
  s.delta = epsilon / (8.0 * s.cost_inf_norm);
  if (!sinkhorn) s.delta = std::min(1.0, s.delta);
  if (variant == Variant::Lifted) {
    auto [a_lift, b_lift] = lift_marginals(a, b, s.delta);
    s.a_used = std::move(a_lift);
    s.b_used = std::move(b_lift);
  }
  s.iteration_bound = sinkhorn ? sinkhorn_iteration_bound(s.cost_inf_norm, s.gamma, s.delta)
                               : greenkhorn_iteration_bound(n, s.cost_inf_norm, s.gamma, s.delta);
  Problem full(s.a_used, s.b_used, cost, s.gamma);
  if (full.has_zero_marginal()) {
    auto [compact, map] = compact_zeros(full);
    s.problem = std::move(compact);
    s.compaction = std::move(map);
  } else {
    s.problem = std::move(full);
  }
  return s;
}

}  // namespace entropot
