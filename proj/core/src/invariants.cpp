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

#include "entropot/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "entropot/oracle.hpp"
#include "entropot/rounding.hpp"
#include "entropot/transforms.hpp"

namespace entropot {
namespace {

double linear_terms(const Problem& problem, const DualPotentials& pot) {
  CompensatedSum s;
  for (Index i = 0; i < pot.f.size(); ++i) s.add(pot.f[i] * problem.a()[i]);
  for (Index j = 0; j < pot.g.size(); ++j) s.add(pot.g[j] * problem.b()[j]);
  return s.value();
}

double max_abs_diff(const Vector& x, const Vector& y) { return (x - y).cwiseAbs().maxCoeff(); }

struct RhoStats {
  double sum = 0.0;
  double max = 0.0;
};

RhoStats rho_stats(const Vector& target, const Vector& sums) {
  RhoStats st;
  CompensatedSum s;
  for (Index i = 0; i < target.size(); ++i) {
    const double r = rho(target[i], sums[i]);
    s.add(r);
    st.max = std::max(st.max, r);
  }
  st.sum = s.value();
  return st;
}

double l1_squared(const Vector& x, const Vector& y) {
  const double d = l1_distance(x, y);
  return d * d;
}

}  // namespace

std::int64_t InvariantReport::total_evaluations() const {
  std::int64_t total = 0;
  for (const auto& [name, count] : evaluations) total += count;
  return total;
}

InvariantMonitorBase::InvariantMonitorBase(const Problem& problem, MonitorOptions options)
    : problem_(problem), options_(std::move(options)) {
  if (options_.reference) check_reference();
}

void InvariantMonitorBase::check(const char* name, std::int64_t k, double lhs, double rhs) {
  ++report_.evaluations[name];
  if (lhs <= rhs) return;
  if (report_.violations.size() < options_.max_recorded) {
    report_.violations.push_back({name, k, lhs, rhs});
  }
}

void InvariantMonitorBase::check_reference() {
  const DualPotentials& ref = options_.reference->potentials;
  const double gamma = problem_.gamma();
  const Vector log_a = gamma * problem_.a().array().log().matrix();
  const Vector log_b = gamma * problem_.b().array().log().matrix();
  const double spread = std::max(max_abs_diff(ref.f, log_a), max_abs_diff(ref.g, log_b));
  check("reference_normalization", 0, spread, 2.0 * problem_.cost_inf_norm() + 1e-7);
}

void InvariantMonitorBase::check_certificate(std::int64_t k, const TransportPlan& plan,
                                             Algorithm bound_kind) {
  const TransportPlan rounded = round_to_polytope(plan, problem_.a(), problem_.b());
  const double gap = certified_cost(rounded, problem_) - *options_.exact_cost;
  const double violation = marginal_violations(plan, problem_).sum();
  const double bound = certificate_bound(bound_kind, std::max(problem_.rows(), problem_.cols()),
                                         problem_.gamma(), violation, problem_.cost_inf_norm());
  check("rounding_certificate", k, gap, bound + 1e-8);
}

void InvariantMonitorBase::check_iteration_bound(const SolveResult& result, std::int64_t bound) {
  if (!result.converged()) return;
  check("iteration_bound", result.iterations, static_cast<double>(result.iterations),
        static_cast<double>(bound));
}

SinkhornInvariantMonitor::SinkhornInvariantMonitor(const Problem& problem, MonitorOptions options)
    : InvariantMonitorBase(problem, std::move(options)) {}

IterationObserver SinkhornInvariantMonitor::observer() {
  return [this](const IterationState& s) { observe(s); };
}

void SinkhornInvariantMonitor::observe(const IterationState& s) {
  const double gamma = problem_.gamma();
  const std::int64_t k = s.k;
  const double h = (options_.exact_dual || s.plan == nullptr)
                       ? dual_objective(problem_, s.potentials)
                       : linear_terms(problem_, s.potentials) - gamma * s.plan->total();
  const double v = s.violation.sum();

  if (prev_ && prev_->k == k - 1) {
    const double gain = h - prev_->h;
    check("monotone_ascent", k, -gain, 1e-10);
    if (prev_->k >= 2) {
      check("sinkhorn_improvement", k, 0.5 * gamma * prev_->violation * prev_->violation,
            gain + 1e-10);
      const double kl = prev_->k % 2 == 0 ? prev_->kl_row : prev_->kl_col;
      check("kl_gain_identity", k, std::abs(gain - gamma * kl), 1e-10);
    }
  }

  if (k >= 2) {
    const double exact_side = k % 2 == 0 ? s.violation.col : s.violation.row;
    check("alternating_exactness", k, exact_side, 1e-10);
    const Equicontinuity eq = equicontinuity_check(problem_, s.potentials);
    const double limit = problem_.cost_max() - problem_.cost_min() + 1e-9;
    check("equicontinuity", k, std::max(eq.f, eq.g), limit);
    if (options_.reference) {
      check("sinkhorn_gap_bound", k, options_.reference->value - h,
            problem_.cost_inf_norm() * v + 1e-8);
    }
  }

  if (options_.exact_cost && s.plan != nullptr) {
    check_certificate(k, *s.plan, k >= 2 ? Algorithm::Sinkhorn : Algorithm::Greenkhorn);
  }

  Previous next{k, h, v, 0.0, 0.0};
  if (k >= 2) {
    next.kl_row = kl_divergence(problem_.a(), s.row_sums);
    next.kl_col = kl_divergence(problem_.b(), s.col_sums);
  }
  prev_ = next;
}

void SinkhornInvariantMonitor::finish(const SolveResult& result, std::int64_t iteration_bound) {
  check_iteration_bound(result, iteration_bound);
}

GreenkhornInvariantMonitor::GreenkhornInvariantMonitor(const Problem& problem,
                                                       MonitorOptions options)
    : InvariantMonitorBase(problem, std::move(options)) {}

IterationObserver GreenkhornInvariantMonitor::observer() {
  return [this](const IterationState& s) { observe(s); };
}

void GreenkhornInvariantMonitor::observe(const IterationState& s) {
  const double gamma = problem_.gamma();
  const double c_norm = problem_.cost_inf_norm();
  const double n = static_cast<double>(std::max(problem_.rows(), problem_.cols()));
  const std::int64_t k = s.k;
  const double h = options_.exact_dual
                       ? dual_objective(problem_, s.potentials)
                       : linear_terms(problem_, s.potentials) - gamma * compensated_sum(s.row_sums);
  const double v = s.violation.sum();
  const RhoStats rows = rho_stats(problem_.a(), s.row_sums);
  const RhoStats cols = rho_stats(problem_.b(), s.col_sums);

  double distance = 0.0;
  if (options_.reference) {
    const DualPotentials& ref = options_.reference->potentials;
    distance = std::max(max_abs_diff(s.potentials.f, ref.f), max_abs_diff(s.potentials.g, ref.g));
  }

  if (prev_ && prev_->k == k - 1 && s.updated_side && s.updated_index) {
    const Index idx = *s.updated_index;
    const double selected = *s.updated_side == Side::Row
                                ? rho(problem_.a()[idx], prev_->row_sums[idx])
                                : rho(problem_.b()[idx], prev_->col_sums[idx]);
    const double gain = h - prev_->h;
    check("gain_identity", k, std::abs(gain - gamma * selected), 1e-10);
    check("greedy_selection", k, prev_->rho_max - selected, 1e-12);
    if (std::max(prev_->rho_row_sum, prev_->rho_col_sum) <= 1.0) {
      check("greenkhorn_improvement", k, gamma / (28.0 * n) * prev_->violation * prev_->violation,
            gain + 1e-12);
    } else {
      check("greenkhorn_improvement", k, gamma / n, gain + 1e-12);
    }
    if (options_.reference) check("non_expansion", k, distance, prev_->distance + 1e-7);
  }

  if (rows.sum <= 1.0) {
    check("generalized_pinsker", k, l1_squared(problem_.a(), s.row_sums), 7.0 * rows.sum + 1e-12);
  }
  if (cols.sum <= 1.0) {
    check("generalized_pinsker", k, l1_squared(problem_.b(), s.col_sums), 7.0 * cols.sum + 1e-12);
  }

  if (options_.reference) {
    const double gap = options_.reference->value - h;
    check("greenkhorn_gap_bound", k, gap, 2.0 * c_norm * v + 1e-7);
    if (k == 0) {
      check("initial_gap", k, gap, 4.0 * c_norm + 1e-7);
      report_.initial_gap = gap;
      report_.initial_gap_within_2c = gap <= 2.0 * c_norm + 1e-7;
    }
  }

  if (s.cache_drift) check("cache_coherence", k, *s.cache_drift, 1e-9);

  if (options_.exact_cost &&
      (k == 0 || (options_.certificate_stride > 0 && k % options_.certificate_stride == 0))) {
    check_certificate(k, plan_from_potentials(problem_, s.potentials), Algorithm::Greenkhorn);
  }

  if (!prev_) {
    prev_ = Previous{k, h, v, rows.sum, cols.sum, std::max(rows.max, cols.max), distance,
                     s.row_sums, s.col_sums};
  } else {
    prev_->k = k;
    prev_->h = h;
    prev_->violation = v;
    prev_->rho_row_sum = rows.sum;
    prev_->rho_col_sum = cols.sum;
    prev_->rho_max = std::max(rows.max, cols.max);
    prev_->distance = distance;
    prev_->row_sums = s.row_sums;
    prev_->col_sums = s.col_sums;
  }
}

void GreenkhornInvariantMonitor::finish(const SolveResult& result, std::int64_t iteration_bound) {
  check_iteration_bound(result, iteration_bound);
}

}  // namespace entropot
