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

#include "entropot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "entropot/rounding.hpp"
#include "entropot/sinkhorn.hpp"

namespace entropot {
namespace {

// Spanning-tree basis of the bipartite transportation graph. Nodes 0..m-1 are
// rows, m..m+n-1 columns.
class TransportSimplex {
 public:
  TransportSimplex(const Vector& a, const Vector& b, const Matrix& cost)
      : a_(a),
        b_(b),
        cost_(cost),
        m_(a.size()),
        n_(b.size()),
        nodes_(m_ + n_),
        slot_of_(static_cast<std::size_t>(m_ * n_), -1),
        adj_(static_cast<std::size_t>(nodes_)),
        potential_(nodes_),
        parent_slot_(static_cast<std::size_t>(nodes_)),
        depth_(static_cast<std::size_t>(nodes_)) {
    northwest_corner();
  }

  ExactSolution solve() {
    ExactSolution out;
    const std::int64_t pivot_cap = 50 * static_cast<std::int64_t>(m_ * n_) + 1000;
    while (true) {
      compute_duals();
      const Index entering = price();
      if (entering < 0) break;
      if (out.pivots >= pivot_cap) throw OracleError("exact_ot: pivot cap exceeded");
      pivot(entering);
      ++out.pivots;
    }
    Matrix p = Matrix::Zero(m_, n_);
    for (const Arc& arc : arcs_) p(arc.row, arc.col) = arc.flow;
    out.plan = TransportPlan(std::move(p));
    CompensatedSum cost;
    for (const Arc& arc : arcs_) cost.add(cost_(arc.row, arc.col) * arc.flow);
    out.cost = cost.value();
    out.u = potential_.head(m_);
    out.v = potential_.tail(n_);
    out.min_reduced_cost = kInfinity;
    for (Index i = 0; i < m_; ++i) {
      for (Index j = 0; j < n_; ++j) {
        out.min_reduced_cost = std::min(out.min_reduced_cost, reduced_cost(i, j));
      }
    }
    out.primal_residual = marginal_violations(out.plan, a_, b_).sum();
    if (!(out.primal_residual <= 1e-9)) {
      std::ostringstream msg;
      msg << "exact_ot: primal residual " << out.primal_residual << " exceeds 1e-9";
      throw OracleError(msg.str());
    }
    if (out.min_reduced_cost < -kReducedCostCertificate) {
      std::ostringstream msg;
      msg << "exact_ot: dual feasibility certificate failed (min reduced cost "
          << out.min_reduced_cost << ")";
      throw OracleError(msg.str());
    }
    return out;
  }

 private:
  struct Arc {
    Index row;
    Index col;
    double flow;
  };

  Index arc_index(Index row, Index col) const { return row * n_ + col; }

  double reduced_cost(Index i, Index j) const {
    return cost_(i, j) - potential_[i] - potential_[m_ + j];
  }

  void add_arc(Index row, Index col, double flow) {
    const int slot = static_cast<int>(arcs_.size());
    arcs_.push_back({row, col, flow});
    attach(slot);
  }

  void attach(int slot) {
    const Arc& arc = arcs_[static_cast<std::size_t>(slot)];
    slot_of_[static_cast<std::size_t>(arc_index(arc.row, arc.col))] = slot;
    adj_[static_cast<std::size_t>(arc.row)].push_back(slot);
    adj_[static_cast<std::size_t>(m_ + arc.col)].push_back(slot);
  }

  void detach(int slot) {
    const Arc& arc = arcs_[static_cast<std::size_t>(slot)];
    slot_of_[static_cast<std::size_t>(arc_index(arc.row, arc.col))] = -1;
    for (Index node : {arc.row, m_ + arc.col}) {
      auto& list = adj_[static_cast<std::size_t>(node)];
      list.erase(std::find(list.begin(), list.end(), slot));
    }
  }

  // Produces exactly m + n - 1 basic arcs, zero-flow ones included.
  void northwest_corner() {
    Vector supply = a_;
    Vector demand = b_;
    Index i = 0;
    Index j = 0;
    while (i < m_ && j < n_) {
      if (i == m_ - 1) {
        add_arc(i, j, std::max(0.0, demand[j]));
        ++j;
      } else if (j == n_ - 1) {
        add_arc(i, j, std::max(0.0, supply[i]));
        demand[j] -= supply[i];
        ++i;
      } else if (supply[i] <= demand[j]) {
        add_arc(i, j, supply[i]);
        demand[j] -= supply[i];
        ++i;
      } else {
        add_arc(i, j, demand[j]);
        supply[i] -= demand[j];
        ++j;
      }
    }
  }

  // u_0 = 0 and u_i + v_j = C_ij on the tree; also records parents and depths
  // for cycle extraction.
  void compute_duals() {
    std::vector<Index> queue;
    queue.reserve(static_cast<std::size_t>(nodes_));
    std::fill(depth_.begin(), depth_.end(), -1);
    potential_[0] = 0.0;
    depth_[0] = 0;
    parent_slot_[0] = -1;
    queue.push_back(0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Index node = queue[head];
      for (int slot : adj_[static_cast<std::size_t>(node)]) {
        const Arc& arc = arcs_[static_cast<std::size_t>(slot)];
        const Index other = node < m_ ? m_ + arc.col : arc.row;
        if (depth_[static_cast<std::size_t>(other)] >= 0) continue;
        depth_[static_cast<std::size_t>(other)] = depth_[static_cast<std::size_t>(node)] + 1;
        parent_slot_[static_cast<std::size_t>(other)] = slot;
        potential_[other] = cost_(arc.row, arc.col) - potential_[node];
        queue.push_back(other);
      }
    }
    if (static_cast<Index>(queue.size()) != nodes_) {
      throw OracleError("exact_ot: basis is not a spanning tree");
    }
  }

  // Lowest row-major index with a sufficiently negative reduced cost, or -1.
  Index price() const {
    for (Index i = 0; i < m_; ++i) {
      const double ui = potential_[i];
      const double* c = cost_.row(i).data();
      for (Index j = 0; j < n_; ++j) {
        if (c[j] - ui - potential_[m_ + j] < -kPricingTolerance &&
            slot_of_[static_cast<std::size_t>(arc_index(i, j))] < 0) {
          return arc_index(i, j);
        }
      }
    }
    return -1;
  }

  Index other_end(int slot, Index node) const {
    const Arc& arc = arcs_[static_cast<std::size_t>(slot)];
    return node < m_ ? m_ + arc.col : arc.row;
  }

  void pivot(Index entering) {
    const Index row = entering / n_;
    const Index col = entering % n_;
    // Tree path from the column end to the row end; signs alternate starting
    // with a decrease next to the column.
    std::vector<int> from_col;
    std::vector<int> from_row;
    Index x = m_ + col;
    Index y = row;
    while (x != y) {
      if (depth_[static_cast<std::size_t>(x)] >= depth_[static_cast<std::size_t>(y)]) {
        const int s = parent_slot_[static_cast<std::size_t>(x)];
        from_col.push_back(s);
        x = other_end(s, x);
      } else {
        const int s = parent_slot_[static_cast<std::size_t>(y)];
        from_row.push_back(s);
        y = other_end(s, y);
      }
    }
    std::vector<int> cycle(from_col);
    cycle.insert(cycle.end(), from_row.rbegin(), from_row.rend());

    int leaving = -1;
    double theta = kInfinity;
    for (std::size_t t = 0; t < cycle.size(); t += 2) {
      const Arc& arc = arcs_[static_cast<std::size_t>(cycle[t])];
      const double flow = arc.flow;
      if (flow < theta ||
          (flow == theta &&
           arc_index(arc.row, arc.col) < arc_index(arcs_[static_cast<std::size_t>(leaving)].row,
                                                   arcs_[static_cast<std::size_t>(leaving)].col))) {
        theta = flow;
        leaving = cycle[t];
      }
    }
    for (std::size_t t = 0; t < cycle.size(); ++t) {
      Arc& arc = arcs_[static_cast<std::size_t>(cycle[t])];
      arc.flow = t % 2 == 0 ? std::max(0.0, arc.flow - theta) : arc.flow + theta;
    }
    detach(leaving);
    arcs_[static_cast<std::size_t>(leaving)] = {row, col, theta};
    attach(leaving);
  }

  const Vector& a_;
  const Vector& b_;
  const Matrix& cost_;
  const Index m_;
  const Index n_;
  const Index nodes_;
  std::vector<Arc> arcs_;
  std::vector<int> slot_of_;
  std::vector<std::vector<int>> adj_;
  Vector potential_;
  std::vector<int> parent_slot_;
  std::vector<Index> depth_;
};

}  // namespace

ExactSolution exact_ot(const Vector& a, const Vector& b, const Matrix& cost) {
  if (a.size() == 0 || b.size() == 0) throw InvalidArgument("exact_ot: empty marginal");
  if (a.size() > kExactMaxSize || b.size() > kExactMaxSize) {
    throw InvalidArgument("exact_ot: instance exceeds the supported size");
  }
  // Validates marginals, shapes and cost.
  const Problem probe(a, b, cost, 1.0);
  return TransportSimplex(probe.a(), probe.b(), probe.cost()).solve();
}

ReferenceOptimum reference_dual_optimum(const Problem& problem, const ReferenceOptions& options) {
  if (problem.has_zero_marginal()) {
    throw InvalidArgument("reference_dual_optimum: marginals must be strictly positive");
  }
  SolverConfig config;
  config.delta = options.tolerance;
  config.max_iterations = std::max<std::int64_t>(2, options.max_iterations);
  const SolveResult r = sinkhorn_solve(problem, config, options.warm_start);
  if (!r.converged()) {
    std::ostringstream msg;
    msg << "reference_dual_optimum: violation " << r.violation.sum() << " after " << r.iterations
        << " iterations (target " << options.tolerance << ")";
    throw OracleError(msg.str());
  }
  ReferenceOptimum ref;
  ref.potentials = r.potentials;
  const double gamma = problem.gamma();
  const Vector shifted = ref.potentials.f - gamma * problem.a().array().log().matrix();
  const double eta = problem.cost_inf_norm() - shifted.maxCoeff();
  ref.potentials.f.array() += eta;
  ref.potentials.g.array() -= eta;
  ref.value = dual_objective(problem, ref.potentials);
  ref.achieved_violation = r.violation.sum();
  ref.iterations = r.iterations;
  return ref;
}

double certificate_bound(Algorithm algorithm, Index n, double gamma, double violation,
                         double cost_inf_norm) {
  const double log_n = std::log(static_cast<double>(n));
  const double mass_term = algorithm == Algorithm::Sinkhorn ? 2.0 : 2.0 + violation;
  return mass_term * gamma * log_n + 4.0 * violation * cost_inf_norm;
}

Certificate certify_plan(const TransportPlan& plan, const Problem& original, double epsilon,
                         Algorithm algorithm, std::optional<double> exact_cost) {
  Certificate c;
  c.epsilon = epsilon;
  c.exact_cost = exact_cost ? *exact_cost : exact_ot(original.a(), original.b(), original.cost()).cost;
  const TransportPlan rounded = round_to_polytope(plan, original.a(), original.b());
  c.rounded_cost = certified_cost(rounded, original);
  c.gap = c.rounded_cost - c.exact_cost;
  c.violation = marginal_violations(plan, original).sum();
  c.bound = certificate_bound(algorithm, original.rows(), original.gamma(), c.violation,
                              original.cost_inf_norm());
  c.satisfied = c.gap <= epsilon;
  return c;
}

Certificate certify(const SolveResult& result, const Problem& original, double epsilon,
                    Algorithm algorithm, std::optional<double> exact_cost) {
  if (!result.converged()) throw InvalidArgument("certify: solver did not converge");
  return certify_plan(result.plan, original, epsilon, algorithm, exact_cost);
}

}  // namespace entropot
