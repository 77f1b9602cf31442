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

#include "entropot/core.hpp"

#include <algorithm>
#include <sstream>

#include "vector_math.hpp"

namespace entropot {
namespace {

std::string entry_name(Index i, Index j) {
  std::ostringstream os;
  os << "(" << i << ", " << j << ")";
  return os.str();
}

void check_finite_vector(const Vector& v, const char* name) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw InvalidArgument(std::string(name) + " has a non-finite entry at index " +
                            std::to_string(i));
    }
  }
}

void check_potentials(const Problem& problem, const DualPotentials& pot) {
  if (pot.f.size() != problem.rows() || pot.g.size() != problem.cols()) {
    throw InvalidArgument("potentials do not match the problem dimensions");
  }
  check_finite_vector(pot.f, "f");
  check_finite_vector(pot.g, "g");
}

}  // namespace

void check_probability_vector(const Vector& v, const char* name) {
  if (v.size() == 0) throw InvalidArgument(std::string(name) + " is empty");
  for (Index i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0) || !std::isfinite(v[i])) {
      throw InvalidArgument(std::string(name) + " has a negative or non-finite entry at index " +
                            std::to_string(i));
    }
  }
  const double s = compensated_sum(v);
  if (std::abs(s - 1.0) > kMarginalSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << name << " sums to " << s << ", expected 1 within " << kMarginalSumTolerance;
    throw InvalidArgument(os.str());
  }
}

Problem::Problem(Vector a, Vector b, Matrix cost, double gamma)
    : a_(std::move(a)), b_(std::move(b)), cost_(std::move(cost)), gamma_(gamma) {
  check_probability_vector(a_, "a");
  check_probability_vector(b_, "b");
  if (cost_.rows() != a_.size() || cost_.cols() != b_.size()) {
    throw InvalidArgument("cost matrix is " + std::to_string(cost_.rows()) + "x" +
                          std::to_string(cost_.cols()) + " but marginals have sizes " +
                          std::to_string(a_.size()) + " and " + std::to_string(b_.size()));
  }
  if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) {
    throw InvalidArgument("gamma must be positive and finite");
  }
  cost_min_ = kInfinity;
  cost_max_ = 0.0;
  for (Index i = 0; i < cost_.rows(); ++i) {
    for (Index j = 0; j < cost_.cols(); ++j) {
      const double c = cost_(i, j);
      if (!(c >= 0.0) || !std::isfinite(c)) {
        throw InvalidArgument("cost entry " + entry_name(i, j) + " is negative or non-finite");
      }
      cost_min_ = std::min(cost_min_, c);
      cost_max_ = std::max(cost_max_, c);
    }
  }
}

bool Problem::has_zero_marginal() const {
  return (a_.array() == 0.0).any() || (b_.array() == 0.0).any();
}

Problem Problem::with_gamma(double gamma) const { return Problem(a_, b_, cost_, gamma); }

Problem Problem::with_marginals(Vector a, Vector b) const {
  return Problem(std::move(a), std::move(b), cost_, gamma_);
}

GibbsKernel build_kernel(const Problem& problem) {
  const Matrix& c = problem.cost();
  const double gamma = problem.gamma();
  GibbsKernel kernel{Matrix(c.rows(), c.cols())};
  for (Index i = 0; i < c.rows(); ++i) {
    for (Index j = 0; j < c.cols(); ++j) {
      const double v = -(c(i, j) / gamma);
      if (!std::isfinite(v)) {
        throw OverflowError("log-kernel entry " + entry_name(i, j) + " is not finite");
      }
      kernel.log_kernel(i, j) = v;
    }
  }
  return kernel;
}

DualPotentials DualPotentials::from_marginals(const Problem& problem) {
  const double gamma = problem.gamma();
  return {gamma * problem.a().array().log().matrix(), gamma * problem.b().array().log().matrix()};
}

TransportPlan::TransportPlan(Matrix p) : p_(std::move(p)) {
  row_sums_.resize(p_.rows());
  col_sums_.setZero(p_.cols());
  for (Index i = 0; i < p_.rows(); ++i) {
    row_sums_[i] = p_.row(i).sum();
    col_sums_ += p_.row(i).transpose();
  }
  total_ = compensated_sum(row_sums_);
  // A NaN or inf entry makes the total non-finite.
  if (!std::isfinite(total_) || (p_.size() > 0 && !(p_.minCoeff() >= 0.0))) {
    for (Index i = 0; i < p_.rows(); ++i) {
      for (Index j = 0; j < p_.cols(); ++j) {
        const double v = p_(i, j);
        if (!(v >= 0.0) || !std::isfinite(v)) {
          throw InvalidArgument("plan entry " + entry_name(i, j) + " is negative or non-finite");
        }
      }
    }
  }
}

TransportPlan TransportPlan::outer(const Vector& a, const Vector& b) {
  return TransportPlan(a * b.transpose());
}

TransportPlan plan_from_potentials(const Problem& problem, const DualPotentials& pot) {
  check_potentials(problem, pot);
  const Matrix& c = problem.cost();
  const double gamma = problem.gamma();
  const Index cols = c.cols();
  Matrix p(c.rows(), cols);
  for (Index i = 0; i < c.rows(); ++i) {
    const double fi = pot.f[i];
    const double* ci = c.row(i).data();
    double* pi = p.row(i).data();
    for (Index j = 0; j < cols; ++j) pi[j] = (fi + pot.g[j] - ci[j]) / gamma;
    internal::exp_shifted(pi, cols, 0.0);
    if (p.row(i).maxCoeff() == kInfinity) {
      for (Index j = 0; j < cols; ++j) {
        if (pi[j] == kInfinity) throw OverflowError("plan entry " + entry_name(i, j) + " overflows");
      }
    }
  }
  return TransportPlan(std::move(p));
}

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -kInfinity;
  const double m = *std::max_element(xs.begin(), xs.end());
  if (m == -kInfinity) return -kInfinity;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

double dual_objective(const Problem& problem, const DualPotentials& pot) {
  check_potentials(problem, pot);
  const Matrix& c = problem.cost();
  const double gamma = problem.gamma();

  double m = -kInfinity;
  for (Index i = 0; i < c.rows(); ++i) {
    for (Index j = 0; j < c.cols(); ++j) {
      m = std::max(m, (pot.f[i] + pot.g[j] - c(i, j)) / gamma);
    }
  }
  CompensatedSum s;
  for (Index i = 0; i < c.rows(); ++i) {
    for (Index j = 0; j < c.cols(); ++j) {
      s.add(std::exp((pot.f[i] + pot.g[j] - c(i, j)) / gamma - m));
    }
  }
  const double mass = std::exp(m + std::log(s.value()));
  if (!std::isfinite(mass)) throw OverflowError("kernel mass in the dual objective overflows");

  CompensatedSum linear;
  for (Index i = 0; i < c.rows(); ++i) linear.add(pot.f[i] * problem.a()[i]);
  for (Index j = 0; j < c.cols(); ++j) linear.add(pot.g[j] * problem.b()[j]);
  return linear.value() - gamma * mass;
}

MarginalViolation marginal_violations(const TransportPlan& plan, const Vector& a,
                                      const Vector& b) {
  if (plan.rows() != a.size() || plan.cols() != b.size()) {
    throw InvalidArgument("plan dimensions do not match the marginals");
  }
  return {l1_distance(plan.row_sums(), a), l1_distance(plan.col_sums(), b)};
}

MarginalViolation marginal_violations(const TransportPlan& plan, const Problem& problem) {
  return marginal_violations(plan, problem.a(), problem.b());
}

double rho(double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0)) throw InvalidArgument("rho requires nonnegative arguments");
  if (x == 0.0) return y;
  if (y == 0.0 || y == kInfinity) return kInfinity;
  // x (t - log(1 + t)) with t = (y - x) / x equals y - x + x log(x / y) and
  // avoids cancellation near y = x. Far from it t can round to -1; very close
  // to it the Taylor series is exact to rounding.
  const double t = (y - x) / x;
  const double a = std::abs(t);
  const double r = a < internal::kRhoSeriesLimit ? x * internal::rho_series(t)
                   : a < 0.5                     ? x * (t - std::log1p(t))
                                                 : y - x + x * (std::log(x) - std::log(y));
  return r > 0.0 ? r : 0.0;
}

double kl_divergence(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw InvalidArgument("kl_divergence: length mismatch");
  CompensatedSum s;
  for (Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0) || !(y[i] >= 0.0)) {
      throw InvalidArgument("kl_divergence requires nonnegative entries");
    }
    if (x[i] == 0.0) continue;
    if (y[i] == 0.0) return kInfinity;
    s.add(x[i] * std::log(x[i] / y[i]));
  }
  const double v = s.value();
  return v > 0.0 ? v : 0.0;
}

std::pair<Problem, CompactionMap> compact_zeros(const Problem& problem) {
  CompactionMap map;
  map.full_rows = problem.rows();
  map.full_cols = problem.cols();
  for (Index i = 0; i < problem.rows(); ++i) {
    if (problem.a()[i] > 0.0) map.kept_rows.push_back(i);
  }
  for (Index j = 0; j < problem.cols(); ++j) {
    if (problem.b()[j] > 0.0) map.kept_cols.push_back(j);
  }
  if (map.kept_rows.empty() || map.kept_cols.empty()) {
    throw InvalidArgument("compact_zeros: a marginal has no positive entry");
  }
  if (map.is_identity()) return {problem, std::move(map)};

  const auto n1 = static_cast<Index>(map.kept_rows.size());
  const auto n2 = static_cast<Index>(map.kept_cols.size());
  Vector a(n1);
  Vector b(n2);
  Matrix c(n1, n2);
  for (Index r = 0; r < n1; ++r) a[r] = problem.a()[map.kept_rows[static_cast<size_t>(r)]];
  for (Index s = 0; s < n2; ++s) b[s] = problem.b()[map.kept_cols[static_cast<size_t>(s)]];
  for (Index r = 0; r < n1; ++r) {
    for (Index s = 0; s < n2; ++s) {
      c(r, s) = problem.cost()(map.kept_rows[static_cast<size_t>(r)],
                               map.kept_cols[static_cast<size_t>(s)]);
    }
  }
  return {Problem(std::move(a), std::move(b), std::move(c), problem.gamma()), std::move(map)};
}

TransportPlan embed_plan(const TransportPlan& compact, const CompactionMap& map) {
  if (compact.rows() != static_cast<Index>(map.kept_rows.size()) ||
      compact.cols() != static_cast<Index>(map.kept_cols.size())) {
    throw InvalidArgument("embed_plan: compact plan does not match the compaction map");
  }
  Matrix p = Matrix::Zero(map.full_rows, map.full_cols);
  for (size_t r = 0; r < map.kept_rows.size(); ++r) {
    const Index i = map.kept_rows[r];
    if (i < 0 || i >= map.full_rows) throw InvalidArgument("embed_plan: row index out of range");
    for (size_t s = 0; s < map.kept_cols.size(); ++s) {
      const Index j = map.kept_cols[s];
      if (j < 0 || j >= map.full_cols) throw InvalidArgument("embed_plan: column index out of range");
      p(i, j) = compact(static_cast<Index>(r), static_cast<Index>(s));
    }
  }
  return TransportPlan(std::move(p));
}

DualPotentials embed_potentials(const DualPotentials& compact, const CompactionMap& map) {
  DualPotentials full{Vector::Constant(map.full_rows, -kInfinity),
                      Vector::Constant(map.full_cols, -kInfinity)};
  for (size_t r = 0; r < map.kept_rows.size(); ++r) {
    full.f[map.kept_rows[r]] = compact.f[static_cast<Index>(r)];
  }
  for (size_t s = 0; s < map.kept_cols.size(); ++s) {
    full.g[map.kept_cols[s]] = compact.g[static_cast<Index>(s)];
  }
  return full;
}

}  // namespace entropot
