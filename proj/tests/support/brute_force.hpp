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

#include "entropot/core.hpp"

namespace entropot::testing {

struct BruteForceResult {
  double cost = 0.0;
  Matrix plan;
  long bases_checked = 0;   // spanning trees of the bipartite graph
  long feasible_bases = 0;  // with nonnegative flows
};

// Minimum transport cost over every basic feasible solution: each choice of
// rows + cols - 1 cells forming a spanning tree of the bipartite row/column
// graph determines unique flows by leaf elimination; keep the nonnegative
// ones. Intended for rows * cols <= 16.
BruteForceResult brute_force_ot(const Vector& a, const Vector& b, const Matrix& cost);

}  // namespace entropot::testing
