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

#include "entropot/greenkhorn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "entropot/transforms.hpp"
#include "solver_common.hpp"
#include "vector_math.hpp"

namespace entropot {
namespace {

// Per-operation relative rounding allowance for a patched sum, and the
// accumulated relative error at which a cached sum is recomputed exactly.
constexpr double kRoundoff = 1e-15;
constexpr double kErrorBudget = 1e-11;

Index argmax_lowest(const Vector& v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

double l1_gap(const Vector& sums, const Vector& target) {
  CompensatedSum s;
  for (Index i = 0; i < sums.size(); ++i) s.add(std::abs(sums[i] - target[i]));
  return s.value();
}

double relative_drift(const Vector& cached, const Vector& fresh) {
  double worst = 0.0;
  for (Index i = 0; i < fresh.size(); ++i) {
    const double scale = std::max({std::abs(fresh[i]), std::abs(cached[i]), 1e-300});
    worst = std::max(worst, std::abs(cached[i] - fresh[i]) / scale);
  }
  return worst;
}

// Greenkhorn on an instance with strictly positive marginals.
class GreenkhornRun {
 public:
  GreenkhornRun(const Problem& problem, const SolverConfig& config, std::int64_t cap)
      : problem_(problem),
        config_(config),
        cap_(cap),
        gamma_(problem.gamma()),
        cost_t_(problem.cost().transpose()),
        period_(std::max(problem.rows(), problem.cols())) {
    result_.potentials = DualPotentials::from_marginals(problem);
    scratch_.resize(period_);
  }

  SolveResult run() {
    const TransportPlan p0 = plan_from_potentials(problem_, result_.potentials);
    load_sums(p0.row_sums(), p0.col_sums());
    std::int64_t k = 0;
    emit(k, std::nullopt, std::nullopt, std::nullopt);
    while (true) {
      if (violation_.sum() <= config_.delta && confirm_convergence()) {
        result_.termination = Termination::Converged;
        break;
      }
      if (k >= cap_) {
        finalize_plan();
        result_.termination = Termination::IterationCap;
        break;
      }
      const Index i = argmax_lowest(rho_row_);
      const Index j = argmax_lowest(rho_col_);
      Side side;
      Index index;
      if (rho_row_[i] > rho_col_[j]) {
        update_row(i);
        side = Side::Row;
        index = i;
      } else {
        update_col(j);
        side = Side::Column;
        index = j;
      }
      ++k;
      std::optional<double> drift;
      if (k % period_ == 0) drift = resynchronize();
      refresh_violation();
      emit(k, side, index, drift);
    }
    result_.iterations = k;
    return std::move(result_);
  }

 private:
  void load_sums(const Vector& rows, const Vector& cols) {
    row_sums_ = rows;
    col_sums_ = cols;
    row_err_.setZero(rows.size());
    col_err_.setZero(cols.size());
    rho_row_.resize(rows.size());
    rho_col_.resize(cols.size());
    internal::rho_array(problem_.a().data(), row_sums_.data(), rho_row_.data(), rows.size());
    internal::rho_array(problem_.b().data(), col_sums_.data(), rho_col_.data(), cols.size());
    refresh_violation();
  }

  void refresh_violation() {
    violation_.row = l1_gap(row_sums_, problem_.a());
    violation_.col = l1_gap(col_sums_, problem_.b());
  }

  // Sets the potential of line `index` so that the line sums to `target` and
  // patches the sums on the other side. Each patched sum carries a bound on
  // its accumulated rounding error; sums whose bound exceeds the budget are
  // recomputed from the potentials.
  void rebalance(Side side, Index index, double target) {
    const bool row = side == Side::Row;
    DualPotentials& pot = result_.potentials;
    const double* cost_row = row ? problem_.cost().row(index).data() : cost_t_.row(index).data();
    const Vector& other = row ? pot.g : pot.f;
    double& potential = row ? pot.f[index] : pot.g[index];
    Vector& other_sums = row ? col_sums_ : row_sums_;
    Vector& other_err = row ? col_err_ : row_err_;
    const Index m = other.size();
    double* x = scratch_.data();
    for (Index j = 0; j < m; ++j) x[j] = (other[j] - cost_row[j]) / gamma_;
    const double x_max = scratch_.head(m).maxCoeff();
    internal::exp_shifted(x, m, x_max);
    const double s = scratch_.head(m).sum();
    const double log_s = std::log(s);
    const double fresh_sum = std::exp(potential / gamma_ + x_max + log_s);
    // New entries are target * e_j / s, old ones fresh_sum * e_j / s.
    const double coeff = (target - fresh_sum) / s;
    potential = gamma_ * (std::log(target) - x_max - log_s);
    cancelled_.clear();
    double* sums = other_sums.data();
    double* err = other_err.data();
    for (Index j = 0; j < m; ++j) {
      const double step = coeff * x[j];
      const double patched = sums[j] + step;
      err[j] += kRoundoff * (std::abs(sums[j]) + std::abs(step));
      sums[j] = patched;
      if (!(err[j] <= kErrorBudget * patched)) cancelled_.push_back(j);
    }
    for (Index j : cancelled_) {
      sums[j] = exact_line_sum(!row, j);
      err[j] = 0.0;
    }
  }

  // Line sum recomputed from the potentials.
  double exact_line_sum(bool row, Index index) {
    const DualPotentials& pot = result_.potentials;
    const double* cost_row = row ? problem_.cost().row(index).data() : cost_t_.row(index).data();
    const Vector& other = row ? pot.g : pot.f;
    const double own = row ? pot.f[index] : pot.g[index];
    const Index m = other.size();
    line_.resize(m);
    double* x = line_.data();
    for (Index j = 0; j < m; ++j) x[j] = (other[j] - cost_row[j]) / gamma_;
    const double x_max = line_.maxCoeff();
    internal::exp_shifted(x, m, x_max);
    return std::exp(own / gamma_ + x_max + std::log(line_.sum()));
  }

  void update_row(Index i) {
    rebalance(Side::Row, i, problem_.a()[i]);
    row_sums_[i] = problem_.a()[i];
    row_err_[i] = 0.0;
    rho_row_[i] = 0.0;
    internal::rho_array(problem_.b().data(), col_sums_.data(), rho_col_.data(), col_sums_.size());
  }

  void update_col(Index j) {
    rebalance(Side::Column, j, problem_.b()[j]);
    col_sums_[j] = problem_.b()[j];
    col_err_[j] = 0.0;
    rho_col_[j] = 0.0;
    internal::rho_array(problem_.a().data(), row_sums_.data(), rho_row_.data(), row_sums_.size());
  }

  // Full recomputation of the sums; returns the relative drift of the caches.
  double resynchronize() {
    const TransportPlan p = plan_from_potentials(problem_, result_.potentials);
    const double drift = std::max(relative_drift(row_sums_, p.row_sums()),
                                  relative_drift(col_sums_, p.col_sums()));
    result_.max_cache_drift = std::max(result_.max_cache_drift, drift);
    load_sums(p.row_sums(), p.col_sums());
    return drift;
  }

  // Rebuilds the plan and accepts convergence only if it holds there too;
  // otherwise re-seeds the caches from the fresh sums and keeps iterating.
  bool confirm_convergence() {
    finalize_plan();
    if (result_.violation.sum() <= config_.delta) return true;
    load_sums(result_.plan.row_sums(), result_.plan.col_sums());
    return false;
  }

  void finalize_plan() {
    result_.plan = plan_from_potentials(problem_, result_.potentials);
    result_.violation = marginal_violations(result_.plan, problem_);
  }

  double cached_dual() const {
    const DualPotentials& pot = result_.potentials;
    CompensatedSum s;
    for (Index i = 0; i < pot.f.size(); ++i) s.add(pot.f[i] * problem_.a()[i]);
    for (Index j = 0; j < pot.g.size(); ++j) s.add(pot.g[j] * problem_.b()[j]);
    for (Index i = 0; i < row_sums_.size(); ++i) s.add(-gamma_ * row_sums_[i]);
    return s.value();
  }

  void emit(std::int64_t k, std::optional<Side> side, std::optional<Index> index,
            std::optional<double> drift) {
    if (config_.record_trace) {
      const Equicontinuity eq = equicontinuity_check(problem_, result_.potentials);
      result_.trace.push_back(
          {k, cached_dual(), violation_.row, violation_.col, side, index, eq.f, eq.g});
    }
    if (config_.observer) {
      config_.observer(IterationState{k, problem_, result_.potentials, row_sums_, col_sums_,
                                      violation_, side, index, nullptr, drift});
    }
  }

  const Problem& problem_;
  const SolverConfig& config_;
  const std::int64_t cap_;
  const double gamma_;
  const Matrix cost_t_;
  const Index period_;
  SolveResult result_;
  Vector row_sums_;
  Vector col_sums_;
  Vector rho_row_;
  Vector rho_col_;
  Vector scratch_;
  Vector row_err_;
  Vector col_err_;
  Vector line_;
  std::vector<Index> cancelled_;
  MarginalViolation violation_;
};

}  // namespace

SolveResult greenkhorn_solve(const Problem& problem, const SolverConfig& config) {
  internal::check_solver_config(config);
  const std::int64_t cap =
      config.max_iterations.value_or(internal::times_ten(greenkhorn_iteration_bound(
          std::max(problem.rows(), problem.cols()), problem.cost_inf_norm(), problem.gamma(),
          config.delta)));
  if (!problem.has_zero_marginal()) return GreenkhornRun(problem, config, cap).run();

  auto [compact, map] = compact_zeros(problem);
  SolveResult r = GreenkhornRun(compact, config, cap).run();
  r.plan = embed_plan(r.plan, map);
  r.potentials = embed_potentials(r.potentials, map);
  r.violation = marginal_violations(r.plan, problem);
  return r;
}

EpsilonSolveResult greenkhorn_epsilon_solve(const Vector& a, const Vector& b, const Matrix& cost,
                                            double epsilon, Variant variant,
                                            const EpsilonOptions& options) {
  return internal::run_epsilon(
      epsilon_setup(Algorithm::Greenkhorn, a, b, cost, epsilon, variant), a, b, options,
      [](const Problem& p, const SolverConfig& c) { return greenkhorn_solve(p, c); });
}
PinskerSides generalized_pinsker_check(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw InvalidArgument("generalized_pinsker_check: length mismatch");
  CompensatedSum l1;
  CompensatedSum rho_sum;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0 || y[i] < 0.0) {
      throw InvalidArgument("generalized_pinsker_check: negative input");
    }
    l1.add(std::abs(x[i] - y[i]));
    rho_sum.add(rho(x[i], y[i]));
  }
  const double d = l1.value();
  return {d * d, 7.0 * rho_sum.value()};
}

}  // namespace entropot
