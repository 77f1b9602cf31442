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

#include "vector_math.hpp"

#include <cmath>

#if defined(ENTROPOT_USE_LIBMVEC)
// glibc only advertises its SIMD variants under -ffast-math; declare them
// directly so this file can keep IEEE semantics.
extern "C" {
#pragma omp declare simd notinbranch
double exp(double);
#pragma omp declare simd notinbranch
double log(double);
#pragma omp declare simd notinbranch
double log1p(double);
}
#define ENTROPOT_CLONES __attribute__((target_clones("avx2", "default")))
#define ENTROPOT_SIMD _Pragma("omp simd")
#define ENTROPOT_EXP ::exp
#define ENTROPOT_LOG ::log
#define ENTROPOT_LOG1P ::log1p
#else
#define ENTROPOT_CLONES
#define ENTROPOT_SIMD
#define ENTROPOT_EXP std::exp
#define ENTROPOT_LOG std::log
#define ENTROPOT_LOG1P std::log1p
#endif

namespace entropot::internal {

ENTROPOT_CLONES
void exp_shifted(double* x, Index n, double shift) {
  ENTROPOT_SIMD
  for (Index i = 0; i < n; ++i) x[i] = ENTROPOT_EXP(x[i] - shift);
}

ENTROPOT_CLONES
void exp_shifted(double* x, const double* shift, Index n) {
  ENTROPOT_SIMD
  for (Index i = 0; i < n; ++i) x[i] = ENTROPOT_EXP(x[i] - shift[i]);
}

ENTROPOT_CLONES
void rho_array(const double* x, const double* y, double* out, Index n) {
  constexpr double inf = kInfinity;
  ENTROPOT_SIMD
  for (Index i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    const double t = (yi - xi) / xi;
    const double series = xi * rho_series(t);
    const double near = xi * (t - ENTROPOT_LOG1P(t));
    const double far = yi - xi + xi * (ENTROPOT_LOG(xi) - ENTROPOT_LOG(yi));
    double r = (t > -0.5 && t < 0.5) ? near : far;
    r = (t > -kRhoSeriesLimit && t < kRhoSeriesLimit) ? series : r;
    r = r > 0.0 ? r : 0.0;
    r = (yi == 0.0 || yi == inf) ? inf : r;
    out[i] = xi == 0.0 ? yi : r;
  }
}

const char* vector_math_backend() {
#if defined(ENTROPOT_USE_LIBMVEC)
  return "libmvec";
#else
  return "scalar";
#endif
}

}  // namespace entropot::internal
