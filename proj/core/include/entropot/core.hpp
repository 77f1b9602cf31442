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

// Problem representation and the log-domain primitives shared by all solvers:
// Gibbs kernel, plan reconstruction from dual potentials, the dual objective
//
//   h(f, g) = <f, a> + <g, b> - gamma * sum_ij exp((f_i + g_j - C_ij) / gamma),
//
// marginal violations (the l1 norms of grad h), KL / rho divergences and
// zero-marginal compaction.

#pragma once

#include <utility>
#include <vector>

#include "entropot/types.hpp"

namespace entropot {

// Tolerance on |sum(a) - 1| accepted at construction. Solvers never
// re-normalize afterwards.
inline constexpr double kMarginalSumTolerance = 1e-12;

// Immutable entropic OT instance. Square in the public API; the compacted
// problems built by compact_zeros() may be rectangular.
class Problem {
 public:
  // Throws InvalidArgument if a or b is not a probability vector, C has a
  // negative or non-finite entry, shapes disagree, or gamma <= 0.
  Problem(Vector a, Vector b, Matrix cost, double gamma);

  const Vector& a() const { return a_; }
  const Vector& b() const { return b_; }
  const Matrix& cost() const { return cost_; }
  double gamma() const { return gamma_; }

  Index rows() const { return a_.size(); }
  Index cols() const { return b_.size(); }
  bool square() const { return rows() == cols(); }

  double cost_min() const { return cost_min_; }
  double cost_max() const { return cost_max_; }
  // ||C||_inf; equals cost_max() because C >= 0.
  double cost_inf_norm() const { return cost_max_; }

  bool has_zero_marginal() const;

  Problem with_gamma(double gamma) const;
  Problem with_marginals(Vector a, Vector b) const;

 private:
  Vector a_;
  Vector b_;
  Matrix cost_;
  double gamma_;
  double cost_min_;
  double cost_max_;
};

// Throws InvalidArgument unless v >= 0 entrywise and |sum(v) - 1| <= 1e-12.
void check_probability_vector(const Vector& v, const char* name);

// Log-domain Gibbs kernel: log_kernel(i, j) = -C(i, j) / gamma.
struct GibbsKernel {
  Matrix log_kernel;
};

GibbsKernel build_kernel(const Problem& problem);

// Dual potentials f = gamma log u, g = gamma log v.
struct DualPotentials {
  Vector f;
  Vector g;

  // (gamma log a, gamma log b), i.e. u = a, v = b.
  static DualPotentials from_marginals(const Problem& problem);
};

// Nonnegative matrix with cached row/column sums and total mass.
class TransportPlan {
 public:
  TransportPlan() = default;
  // Throws InvalidArgument on a negative or non-finite entry.
  explicit TransportPlan(Matrix p);

  static TransportPlan outer(const Vector& a, const Vector& b);

  const Matrix& matrix() const { return p_; }
  const Vector& row_sums() const { return row_sums_; }
  const Vector& col_sums() const { return col_sums_; }
  double total() const { return total_; }
  Index rows() const { return p_.rows(); }
  Index cols() const { return p_.cols(); }

  double operator()(Index i, Index j) const { return p_(i, j); }

 private:
  Matrix p_;
  Vector row_sums_;
  Vector col_sums_;
  double total_ = 0.0;
};

// P_ij = exp((f_i + g_j - C_ij) / gamma), one exponentiation per entry.
// Underflow flushes to 0. Throws OverflowError naming (i, j) on overflow and
// InvalidArgument on non-finite potentials or shape mismatch.
TransportPlan plan_from_potentials(const Problem& problem, const DualPotentials& pot);

// h(f, g) with the kernel mass evaluated as exp(logsumexp) for stability.
double dual_objective(const Problem& problem, const DualPotentials& pot);

struct MarginalViolation {
  double row = 0.0;  // ||P 1 - a||_1
  double col = 0.0;  // ||P^T 1 - b||_1
  double sum() const { return row + col; }
};

MarginalViolation marginal_violations(const TransportPlan& plan, const Problem& problem);
MarginalViolation marginal_violations(const TransportPlan& plan, const Vector& a,
                                      const Vector& b);

// KL(x || y) with 0 log 0 = 0; returns +inf when some y_i = 0 < x_i.
double kl_divergence(const Vector& x, const Vector& y);

// rho(x, y) = y - x + x log(x / y), rho(0, 0) = 0, +inf when x > 0 = y.
double rho(double x, double y);

// max-shifted log(sum exp(x)); -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> xs);

struct CompactionMap {
  std::vector<Index> kept_rows;  // rows with a_i > 0
  std::vector<Index> kept_cols;  // columns with b_j > 0
  Index full_rows = 0;
  Index full_cols = 0;

  bool is_identity() const {
    return static_cast<Index>(kept_rows.size()) == full_rows &&
           static_cast<Index>(kept_cols.size()) == full_cols;
  }
};

// Removes zero entries of a and b together with the matching rows/columns of
// C. Throws InvalidArgument when a marginal has no positive entry.
std::pair<Problem, CompactionMap> compact_zeros(const Problem& problem);

// Places a compact plan back into the full shape of the map, zeros elsewhere.
TransportPlan embed_plan(const TransportPlan& compact, const CompactionMap& map);

// Full-size potentials; removed coordinates get -inf (u_i = 0).
DualPotentials embed_potentials(const DualPotentials& compact, const CompactionMap& map);

}  // namespace entropot
