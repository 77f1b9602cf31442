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

#include "entropot/types.hpp"

namespace entropot::internal {

// Scratch buffers reused across calls.
struct TransformWorkspace {
  Vector line;
  Vector col_max;
  Vector col_sum;
};

// In-place transforms without input validation, for the solver hot loops.
void row_transform(const Matrix& cost, double gamma, const Vector& g, const Vector& a, Vector& f,
                   TransformWorkspace& ws);
void col_transform(const Matrix& cost, double gamma, const Vector& f, const Vector& b, Vector& g,
                   TransformWorkspace& ws);

}  // namespace entropot::internal
