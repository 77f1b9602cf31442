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

// Partial maximizers of the dual objective and the oscillation diagnostics
// that bound them.

#pragma once

#include "entropot/core.hpp"

namespace entropot {

// argmax_g h(f, g):
//   g_j = gamma log b_j - gamma logsumexp_i((f_i - C_ij) / gamma).
// g_j = -inf where b_j = 0. Throws InvalidArgument on non-finite f.
Vector c_gamma_transform(const Problem& problem, const Vector& f);

// argmax_f h(f, g), the mirror image over rows.
Vector c_gamma_bar_transform(const Problem& problem, const Vector& g);

// max(x - ref) - min(x - ref).
double oscillation(const Vector& x, const Vector& ref);

struct Equicontinuity {
  double f = 0.0;  // oscillation(f, gamma log a)
  double g = 0.0;  // oscillation(g, gamma log b)
};

// Both components are bounded by max(C) - min(C) for transforms and for
// Sinkhorn iterates k >= 2; the caller decides what to do with the margin.
Equicontinuity equicontinuity_check(const Problem& problem, const DualPotentials& pot);

}  // namespace entropot
