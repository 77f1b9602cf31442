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

#include "entropot/rounding.hpp"

#include <algorithm>
#include <cmath>

namespace entropot {
namespace {

void check_target(const Vector& v, Index expected, const char* name) {
  if (v.size() != expected) {
    throw InvalidArgument(std::string("round_to_polytope: ") + name + " has the wrong length");
  }
  for (Index i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0) || !std::isfinite(v[i])) {
      throw InvalidArgument(std::string("round_to_polytope: ") + name +
                            " must be nonnegative and finite");
    }
  }
}

// min(target / sum, 1), with 1 for an empty line.
double shrink_factor(double target, double sum) {
  return sum > target ? target / sum : 1.0;
}

}  // namespace

RoundingSteps round_to_polytope_detailed(const TransportPlan& plan, const Vector& a,
                                         const Vector& b) {
  check_target(a, plan.rows(), "a");
  check_target(b, plan.cols(), "b");
  const double mass_a = compensated_sum(a);
  const double mass_b = compensated_sum(b);
  if (std::abs(mass_a - mass_b) > 1e-12 * std::max(1.0, mass_a)) {
    throw InvalidArgument("round_to_polytope: a and b must have equal mass");
  }

  RoundingSteps steps;
  Matrix p = plan.matrix();
  for (Index i = 0; i < p.rows(); ++i) {
    const double x = shrink_factor(a[i], plan.row_sums()[i]);
    if (x != 1.0) p.row(i) *= x;
  }
  steps.row_scaled = TransportPlan(p);
  for (Index j = 0; j < p.cols(); ++j) {
    const double y = shrink_factor(b[j], steps.row_scaled.col_sums()[j]);
    if (y != 1.0) p.col(j) *= y;
  }
  steps.col_scaled = TransportPlan(p);

  // Nonnegative in exact arithmetic; clamp rounding noise.
  steps.err_a = (a - steps.col_scaled.row_sums()).cwiseMax(0.0);
  steps.err_b = (b - steps.col_scaled.col_sums()).cwiseMax(0.0);
  const double norm_a = compensated_sum(steps.err_a);
  if (norm_a >= kRoundingSkipThreshold) {
    p.noalias() += steps.err_a * steps.err_b.transpose() / norm_a;
    steps.rank_one_applied = true;
    steps.result = TransportPlan(std::move(p));
  } else {
    steps.result = steps.col_scaled;
  }
  return steps;
}

TransportPlan round_to_polytope(const TransportPlan& plan, const Vector& a, const Vector& b) {
  return round_to_polytope_detailed(plan, a, b).result;
}

double certified_cost(const TransportPlan& plan, const Matrix& cost) {
  if (plan.rows() != cost.rows() || plan.cols() != cost.cols()) {
    throw InvalidArgument("certified_cost: dimension mismatch");
  }
  CompensatedSum s;
  const Matrix& p = plan.matrix();
  for (Index i = 0; i < p.rows(); ++i) {
    for (Index j = 0; j < p.cols(); ++j) s.add(cost(i, j) * p(i, j));
  }
  return s.value();
}

double certified_cost(const TransportPlan& plan, const Problem& problem) {
  return certified_cost(plan, problem.cost());
}

}  // namespace entropot
