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

#include "support/brute_force.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace entropot::testing {
namespace {

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Flows on the tree cells by repeatedly settling a node of degree one.
bool solve_tree(const std::vector<int>& cells, Index rows, Index cols, const Vector& a,
                const Vector& b, Matrix& flow) {
  const Index nodes = rows + cols;
  std::vector<double> residual(static_cast<std::size_t>(nodes));
  for (Index i = 0; i < rows; ++i) residual[i] = a[i];
  for (Index j = 0; j < cols; ++j) residual[rows + j] = b[j];
  std::vector<int> degree(static_cast<std::size_t>(nodes), 0);
  for (int c : cells) {
    ++degree[c / cols];
    ++degree[rows + c % cols];
  }
  std::vector<bool> used(cells.size(), false);
  flow.setZero(rows, cols);
  for (std::size_t settled = 0; settled < cells.size(); ++settled) {
    bool progress = false;
    for (std::size_t e = 0; e < cells.size() && !progress; ++e) {
      if (used[e]) continue;
      const Index i = cells[e] / cols;
      const Index j = cells[e] % cols;
      Index leaf = -1;
      if (degree[i] == 1) leaf = i;
      else if (degree[rows + j] == 1) leaf = rows + j;
      if (leaf < 0) continue;
      const double x = residual[leaf];
      flow(i, j) = x;
      residual[i] -= x;
      residual[rows + j] -= x;
      --degree[i];
      --degree[rows + j];
      used[e] = true;
      progress = true;
    }
    if (!progress) return false;
  }
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      if (flow(i, j) < -1e-14) return false;
    }
  }
  return true;
}

}  // namespace

BruteForceResult brute_force_ot(const Vector& a, const Vector& b, const Matrix& cost) {
  const Index rows = a.size();
  const Index cols = b.size();
  const int cells = static_cast<int>(rows * cols);
  const int basis = static_cast<int>(rows + cols - 1);
  if (cells > 20) throw std::invalid_argument("brute_force_ot: instance too large");
  BruteForceResult best;
  best.cost = kInfinity;
  std::vector<int> pick(static_cast<std::size_t>(basis));
  std::iota(pick.begin(), pick.end(), 0);
  Matrix flow;
  while (true) {
    // Acyclic with rows + cols - 1 edges means spanning tree.
    std::vector<int> parent(static_cast<std::size_t>(rows + cols));
    std::iota(parent.begin(), parent.end(), 0);
    bool tree = true;
    for (int c : pick) {
      const int x = find(parent, c / static_cast<int>(cols));
      const int y = find(parent, static_cast<int>(rows) + c % static_cast<int>(cols));
      if (x == y) {
        tree = false;
        break;
      }
      parent[x] = y;
    }
    if (tree) {
      ++best.bases_checked;
      if (solve_tree(pick, rows, cols, a, b, flow)) {
        ++best.feasible_bases;
        const double c = (flow.array() * cost.array()).sum();
        if (c < best.cost) {
          best.cost = c;
          best.plan = flow;
        }
      }
    }
    // Next combination in lexicographic order.
    int k = basis - 1;
    while (k >= 0 && pick[k] == cells - basis + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int t = k + 1; t < basis; ++t) pick[t] = pick[t - 1] + 1;
  }
  return best;
}

}  // namespace entropot::testing
