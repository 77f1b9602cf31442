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

// Projection of a nonnegative matrix onto the transport polytope
// {P >= 0 : P 1 = a, P^T 1 = b}:
//
//   P'  = diag(min(a / P 1, 1)) P
//   P'' = P' diag(min(b / P'^T 1, 1))
//   out = P'' + err_a err_b^T / ||err_a||_1,  err_a = a - P'' 1, err_b = b - P''^T 1
//
// with ||P - out||_1 <= 2 (||a - P 1||_1 + ||b - P^T 1||_1).

#pragma once

#include "entropot/core.hpp"

namespace entropot {

// Below this ||err_a||_1 the rank-one correction is skipped.
inline constexpr double kRoundingSkipThreshold = 1e-15;

struct RoundingSteps {
  TransportPlan row_scaled;   // P'
  TransportPlan col_scaled;   // P''
  Vector err_a;
  Vector err_b;
  bool rank_one_applied = false;
  TransportPlan result;
};

// a and b are nonnegative with equal mass (within 1e-12 relative to the
// mass); they need not sum to 1. Throws InvalidArgument otherwise, or on
// negative or mismatched input.
TransportPlan round_to_polytope(const TransportPlan& plan, const Vector& a, const Vector& b);
RoundingSteps round_to_polytope_detailed(const TransportPlan& plan, const Vector& a,
                                         const Vector& b);

// <C, P> with compensated summation.
double certified_cost(const TransportPlan& plan, const Problem& problem);
double certified_cost(const TransportPlan& plan, const Matrix& cost);

}  // namespace entropot
