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

// Ground truth for the solvers: the exact transport optimum, a tightly
// converged regularized dual optimum, and accuracy certificates for rounded
// solver output.

#pragma once

#include <cstdint>
#include <optional>

#include "entropot/core.hpp"
#include "entropot/solve_types.hpp"

namespace entropot {

inline constexpr Index kExactMaxSize = 512;
// Entering threshold on reduced costs and the final optimality certificate.
inline constexpr double kPricingTolerance = 1e-11;
inline constexpr double kReducedCostCertificate = 1e-10;

struct ExactSolution {
  TransportPlan plan;             // an optimal vertex of the transport polytope
  double cost = 0.0;              // <C, P*>
  Vector u;                       // row duals, u_0 = 0
  Vector v;                       // column duals
  double min_reduced_cost = 0.0;  // min_ij C_ij - u_i - v_j
  double primal_residual = 0.0;   // ||P* 1 - a||_1 + ||P*^T 1 - b||_1
  std::int64_t pivots = 0;
};

// Transportation network simplex: northwest-corner start, Bland's rule for
// both the entering arc (lowest row-major index with reduced cost below
// -kPricingTolerance) and the leaving arc (lowest index among ratio ties).
// Throws InvalidArgument for bad input or n > kExactMaxSize and OracleError if
// the final duals fail the reduced-cost certificate or the flows miss the
// marginals by more than 1e-9 in l1.
ExactSolution exact_ot(const Vector& a, const Vector& b, const Matrix& cost);

struct ReferenceOptions {
  double tolerance = 1e-12;  // target violation sum
  std::int64_t max_iterations = 10'000'000;
  std::optional<DualPotentials> warm_start;
};

// Sinkhorn run to violation <= tolerance, then shifted by eta along
// (f + eta, g - eta) so that max(f* - gamma log a) = ||C||_inf. Requires
// a, b > 0. Throws OracleError (message includes the achieved violation) when
// the tolerance is not reached within the cap.
ReferenceOptimum reference_dual_optimum(const Problem& problem,
                                        const ReferenceOptions& options = {});

struct Certificate {
  double rounded_cost = 0.0;  // <C, Round(P)>
  double exact_cost = 0.0;    // <C, P*>
  double epsilon = 0.0;
  double gap = 0.0;           // rounded_cost - exact_cost
  double bound = 0.0;         // guaranteed upper bound on gap
  double violation = 0.0;     // of P against the original marginals
  bool satisfied = false;     // gap <= epsilon
};

// Gap bound for a plan of the scaling form with regularization gamma.
// Sinkhorn iterates (probability matrices): 2 gamma log n + 4 v ||C||_inf.
// Greenkhorn iterates: (2 + v) gamma log n + 4 v ||C||_inf.
double certificate_bound(Algorithm algorithm, Index n, double gamma, double violation,
                         double cost_inf_norm);

// Rounds `plan` onto the marginals of `original` and compares with the exact
// optimum (computed here unless supplied). gamma is taken from `original`.
Certificate certify_plan(const TransportPlan& plan, const Problem& original, double epsilon,
                         Algorithm algorithm, std::optional<double> exact_cost = std::nullopt);

// certify_plan on a converged result; throws InvalidArgument otherwise.
Certificate certify(const SolveResult& result, const Problem& original, double epsilon,
                    Algorithm algorithm, std::optional<double> exact_cost = std::nullopt);

}  // namespace entropot
