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

// Elementwise kernels for the solver inner loops. When built against glibc's
// libmvec they use its SIMD exp/log1p (a few ulp from the scalar functions);
// otherwise they are plain loops over std::exp / std::log1p.

#pragma once

#include "entropot/types.hpp"

namespace entropot::internal {

// x[i] = exp(x[i] - shift).
void exp_shifted(double* x, Index n, double shift);

// x[i] = exp(x[i] - shift[i]).
void exp_shifted(double* x, const double* shift, Index n);

// |t| below which t - log(1 + t) is evaluated by its Taylor series.
inline constexpr double kRhoSeriesLimit = 1e-3;

// t - log(1 + t) = t^2/2 - t^3/3 + ... truncated after t^7.
inline double rho_series(double t) {
  return t * t *
         (1.0 / 2 + t * (-1.0 / 3 + t * (1.0 / 4 + t * (-1.0 / 5 + t * (1.0 / 6 - t / 7)))));
}

// out[i] = rho(x[i], y[i]) for x, y >= 0 (no argument validation).
void rho_array(const double* x, const double* y, double* out, Index n);

// Name of the active backend, for diagnostics.
const char* vector_math_backend();

}  // namespace entropot::internal
