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

#include "entropot/solve_types.hpp"

#include <cmath>
#include <limits>

namespace entropot {
namespace {

constexpr std::int64_t kSaturated = std::numeric_limits<std::int64_t>::max();

// ceil(x) as an integer, saturating instead of overflowing.
std::int64_t saturating_ceil(double x) {
  if (!(x < 9.0e18)) return kSaturated;
  return static_cast<std::int64_t>(std::ceil(x));
}

std::int64_t saturating_add(std::int64_t x, std::int64_t y) {
  return x > kSaturated - y ? kSaturated : x + y;
}

std::int64_t saturating_double(std::int64_t x) { return saturating_add(x, x); }

}  // namespace

const char* to_string(Side side) { return side == Side::Row ? "row" : "column"; }

const char* to_string(Termination termination) {
  return termination == Termination::Converged ? "converged" : "iteration_cap";
}

const char* to_string(Variant variant) {
  return variant == Variant::Vanilla ? "vanilla" : "lifted";
}

const char* to_string(Algorithm algorithm) {
  return algorithm == Algorithm::Sinkhorn ? "sinkhorn" : "greenkhorn";
}

std::int64_t sinkhorn_iteration_bound(double cost_inf_norm, double gamma, double delta) {
  return saturating_add(2, saturating_double(saturating_ceil(2.0 * cost_inf_norm / (gamma * delta))));
}

std::int64_t greenkhorn_iteration_bound(Index n, double cost_inf_norm, double gamma,
                                        double delta) {
  const double nc = static_cast<double>(n) * cost_inf_norm;
  return saturating_add(saturating_double(saturating_ceil(56.0 * nc / (gamma * delta))),
                        saturating_double(saturating_ceil(4.0 * nc / gamma)));
}

}  // namespace entropot
