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

#include "entropot/transforms.hpp"

#include <algorithm>

#include "transforms_internal.hpp"
#include "vector_math.hpp"

namespace entropot {
namespace internal {

void row_transform(const Matrix& cost, double gamma, const Vector& g, const Vector& a, Vector& f,
                   TransformWorkspace& ws) {
  const Index rows = cost.rows();
  const Index cols = cost.cols();
  ws.line.resize(cols);
  double* x = ws.line.data();
  for (Index i = 0; i < rows; ++i) {
    if (a[i] == 0.0) {
      f[i] = -kInfinity;
      continue;
    }
    const double* c = cost.row(i).data();
    for (Index j = 0; j < cols; ++j) x[j] = (g[j] - c[j]) / gamma;
    const double m = ws.line.maxCoeff();
    exp_shifted(x, cols, m);
    f[i] = gamma * std::log(a[i]) - gamma * (m + std::log(ws.line.sum()));
  }
}

void col_transform(const Matrix& cost, double gamma, const Vector& f, const Vector& b, Vector& g,
                   TransformWorkspace& ws) {
  const Index rows = cost.rows();
  const Index cols = cost.cols();
  ws.line.resize(cols);
  ws.col_max.setConstant(cols, -kInfinity);
  ws.col_sum.setZero(cols);
  double* x = ws.line.data();
  double* m = ws.col_max.data();
  // Row-major storage: sweep rows in the outer loop for both passes.
  for (Index i = 0; i < rows; ++i) {
    const double* c = cost.row(i).data();
    const double fi = f[i];
    for (Index j = 0; j < cols; ++j) m[j] = std::max(m[j], (fi - c[j]) / gamma);
  }
  for (Index i = 0; i < rows; ++i) {
    const double* c = cost.row(i).data();
    const double fi = f[i];
    for (Index j = 0; j < cols; ++j) x[j] = (fi - c[j]) / gamma;
    exp_shifted(x, m, cols);
    ws.col_sum += ws.line;
  }
  for (Index j = 0; j < cols; ++j) {
    g[j] = b[j] == 0.0 ? -kInfinity
                       : gamma * std::log(b[j]) - gamma * (m[j] + std::log(ws.col_sum[j]));
  }
}

}  // namespace internal

namespace {

void require_finite(const Vector& v, Index expected, const char* name) {
  if (v.size() != expected) throw InvalidArgument(std::string(name) + ": length mismatch");
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw InvalidArgument(std::string(name) + ": non-finite input at index " + std::to_string(i));
    }
  }
}

}  // namespace

Vector c_gamma_transform(const Problem& problem, const Vector& f) {
  require_finite(f, problem.rows(), "c_gamma_transform");
  Vector g(problem.cols());
  internal::TransformWorkspace ws;
  internal::col_transform(problem.cost(), problem.gamma(), f, problem.b(), g, ws);
  return g;
}

Vector c_gamma_bar_transform(const Problem& problem, const Vector& g) {
  require_finite(g, problem.cols(), "c_gamma_bar_transform");
  Vector f(problem.rows());
  internal::TransformWorkspace ws;
  internal::row_transform(problem.cost(), problem.gamma(), g, problem.a(), f, ws);
  return f;
}

double oscillation(const Vector& x, const Vector& ref) {
  if (x.size() != ref.size()) throw InvalidArgument("oscillation: length mismatch");
  if (x.size() == 0) return 0.0;
  const Vector d = x - ref;
  return d.maxCoeff() - d.minCoeff();
}

Equicontinuity equicontinuity_check(const Problem& problem, const DualPotentials& pot) {
  const double gamma = problem.gamma();
  const Vector log_a = gamma * problem.a().array().log().matrix();
  const Vector log_b = gamma * problem.b().array().log().matrix();
  return {oscillation(pot.f, log_a), oscillation(pot.g, log_b)};
}

}  // namespace entropot
