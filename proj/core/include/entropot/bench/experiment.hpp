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

// Benchmark orchestration: for every trial (a pair of images), every epsilon
// and every requested solver, run the solver, certify the rounded output
// against the exact optimum, sample error-vs-iteration curves and evaluate
// the invariant monitors. Results are ordered by (trial, epsilon, algorithm)
// and contain no timing data, so identical specs give identical output.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entropot/invariants.hpp"
#include "entropot/solve_types.hpp"

namespace entropot::bench {

enum class Dataset { Mnist, Synthetic };

struct SolverChoice {
  Algorithm algorithm = Algorithm::Sinkhorn;
  Variant variant = Variant::Vanilla;
};

// "sinkhorn", "sinkhorn-lifted", "greenkhorn", "greenkhorn-lifted".
std::string solver_name(const SolverChoice& choice);
// Throws InvalidArgument for an unknown name.
SolverChoice parse_solver(const std::string& name);
const char* dataset_name(Dataset dataset);

struct ExperimentSpec {
  Dataset dataset = Dataset::Synthetic;
  std::vector<SolverChoice> solvers{{Algorithm::Sinkhorn, Variant::Vanilla}};
  std::vector<double> epsilons{0.1};
  // Interpret epsilons as multiples of ||C||_inf.
  bool relative_epsilon = false;
  int trials = 1;
  std::uint64_t seed = 0;
  int side = 0;  // 0 selects the dataset default
  std::string mnist_path;
  double foreground_fraction = 0.2;
  bool check_invariants = true;
  bool use_oracle = true;
  // Reference optimum for the monitors; skipped (and noted) past the cap.
  bool use_reference = true;
  std::int64_t reference_max_iterations = 50'000;
  bool write_svg = true;
};

// Throws InvalidArgument when trials < 1, epsilons are empty or not positive,
// or no solver is selected.
void validate(const ExperimentSpec& spec);

struct Instance {
  Vector a;
  Vector b;
  Matrix cost;
};

struct RunRecord {
  int trial = 0;
  double epsilon = 0.0;       // as listed in ExperimentSpec::epsilons
  double epsilon_abs = 0.0;   // absolute accuracy used by the solver
  SolverChoice solver;
  double gamma = 0.0;
  double delta = 0.0;
  Index n = 0;
  std::int64_t iterations = 0;
  bool converged = false;
  double rounded_cost = 0.0;
  std::optional<double> exact_cost;
  std::optional<double> gap;
  double gap_bound = 0.0;
  std::int64_t theorem_bound = 0;
  std::int64_t invariant_violations = 0;
  std::int64_t invariant_evaluations = 0;
  std::vector<InvariantViolation> violations;
  std::vector<std::string> notes;
  // Error-vs-iteration samples: (k, <C, Round(P_k)>).
  std::vector<std::pair<std::int64_t, double>> curve;
};

struct ScalingFit {
  SolverChoice solver;
  std::vector<double> epsilons;         // absolute, averaged over trials
  std::vector<double> mean_iterations;  // per epsilon, in ExperimentSpec order
  double slope = 0.0;                   // iterations per unit of 1 / eps^2
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct ExperimentResult {
  ExperimentSpec spec;
  Index n = 0;
  std::vector<RunRecord> runs;
  std::vector<ScalingFit> scaling;  // needs >= 2 epsilons
  std::vector<std::string> notes;

  std::int64_t total_violations() const;
};

// One image pair per trial.
std::vector<Instance> make_instances(const ExperimentSpec& spec);

// Runs every (trial, epsilon, solver) cell on the given instances. Throws
// OracleError when the exact solver fails.
ExperimentResult run_instances(const ExperimentSpec& spec, const std::vector<Instance>& instances);

// make_instances + run_instances + write_reports into out_dir.
ExperimentResult run_experiment(const ExperimentSpec& spec, const std::string& out_dir);

// Least-squares fit of y on x with its coefficient of determination.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace entropot::bench
