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

// Runtime monitors that evaluate the convergence-analysis inequalities on
// every iterate a solver reports. Attach one through SolverConfig::observer
// (or EpsilonOptions::observer) and call finish() with the result.
//
// Sinkhorn checks (k counts iterates, P_k is built from (f_k, g_k)):
//   monotone_ascent        h_{k+1} >= h_k - 1e-10
//   sinkhorn_improvement   k >= 2: h_{k+1} - h_k >= gamma/2 v_k^2 - 1e-10
//   kl_gain_identity       k >= 2: h_{k+1} - h_k = gamma KL(a || P_k 1)
//                          (even k) or gamma KL(b || P_k^T 1) (odd k), 1e-10
//   alternating_exactness  k >= 2: the side updated last is within 1e-10
//   equicontinuity         k >= 2: both oscillations <= max C - min C + 1e-9
//   sinkhorn_gap_bound     k >= 2, with reference: h* - h_k <= ||C|| v_k + 1e-8
//   rounding_certificate   with exact cost: gap of Round(P_k) within the
//                          probability-matrix bound (k >= 2) or the general
//                          bound (k < 2), 1e-8
//   iteration_bound        converged runs stay within the supplied bound
//
// Greenkhorn checks:
//   gain_identity          h_{k+1} - h_k = gamma rho(selected), 1e-10
//   greedy_selection       the updated coordinate carries the largest rho
//   greenkhorn_improvement gain >= gamma/(28 n) v_k^2 - 1e-12 when both rho
//                          sums are <= 1, gain >= gamma/n - 1e-12 otherwise
//   generalized_pinsker    ||x - y||_1^2 <= 7 sum rho + 1e-12 per side when
//                          that side's rho sum is <= 1
//   non_expansion          with reference: max-norm distance to (f*, g*)
//                          grows by at most 1e-7 per iteration
//   greenkhorn_gap_bound   with reference: h* - h_k <= 2 ||C|| v_k + 1e-7
//   initial_gap            with reference: h* - h_0 <= 4 ||C|| + 1e-7
//   cache_coherence        recomputed sums agree within 1e-9 relative
//   rounding_certificate   every `certificate_stride` iterations
//   iteration_bound
//
// With a reference, reference_normalization checks
// max(||f* - gamma log a||, ||g* - gamma log b||) <= 2 ||C|| + 1e-7 once.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entropot/solve_types.hpp"

namespace entropot {

struct InvariantViolation {
  std::string check;
  std::int64_t k = 0;
  double lhs = 0.0;
  double rhs = 0.0;  // the check required lhs <= rhs (or |lhs| <= rhs)
};

struct InvariantReport {
  std::vector<InvariantViolation> violations;
  std::map<std::string, std::int64_t> evaluations;
  std::optional<double> initial_gap;              // Greenkhorn, with reference
  std::optional<bool> initial_gap_within_2c;      // initial_gap <= 2 ||C|| + 1e-7

  bool ok() const { return violations.empty(); }
  std::int64_t total_evaluations() const;
};

struct MonitorOptions {
  std::optional<ReferenceOptimum> reference;
  // Exact transport optimum for the monitored marginals; enables the rounding
  // certificate check.
  std::optional<double> exact_cost;
  // Evaluate h with dual_objective instead of the cheaper plan/cached form.
  bool exact_dual = false;
  // Greenkhorn: iterations between rounding certificate checks (0 = only k=0).
  std::int64_t certificate_stride = 0;
  // Stored violations are capped; evaluations keep counting.
  std::size_t max_recorded = 1000;
};

class InvariantMonitorBase {
 public:
  const InvariantReport& report() const { return report_; }

 protected:
  InvariantMonitorBase(const Problem& problem, MonitorOptions options);

  // Counts the evaluation and records a violation unless lhs <= rhs.
  void check(const char* name, std::int64_t k, double lhs, double rhs);
  void check_reference();
  void check_certificate(std::int64_t k, const TransportPlan& plan, Algorithm bound_kind);
  void check_iteration_bound(const SolveResult& result, std::int64_t bound);

  const Problem& problem_;
  MonitorOptions options_;
  InvariantReport report_;
};

class SinkhornInvariantMonitor : public InvariantMonitorBase {
 public:
  // `problem` must be the instance the solver iterates on and outlive the
  // monitor.
  explicit SinkhornInvariantMonitor(const Problem& problem, MonitorOptions options = {});

  void observe(const IterationState& state);
  IterationObserver observer();
  void finish(const SolveResult& result, std::int64_t iteration_bound);

 private:
  struct Previous {
    std::int64_t k;
    double h;
    double violation;
    double kl_row;
    double kl_col;
  };
  std::optional<Previous> prev_;
};

class GreenkhornInvariantMonitor : public InvariantMonitorBase {
 public:
  explicit GreenkhornInvariantMonitor(const Problem& problem, MonitorOptions options = {});

  void observe(const IterationState& state);
  IterationObserver observer();
  void finish(const SolveResult& result, std::int64_t iteration_bound);

 private:
  struct Previous {
    std::int64_t k;
    double h;
    double violation;
    double rho_row_sum;
    double rho_col_sum;
    double rho_max;
    double distance;
    Vector row_sums;
    Vector col_sums;
  };
  std::optional<Previous> prev_;
};

}  // namespace entropot
