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

// Output files of a benchmark run. Everything is a pure function of the
// ExperimentResult, so reruns are byte-identical.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entropot/bench/experiment.hpp"

namespace entropot::bench {

inline constexpr const char* kSummaryHeader =
    "dataset,algo,trial,epsilon,gamma,delta,n,iterations,rounded_cost,exact_cost,gap,"
    "theorem_bound,invariant_violations";

// One row per run; exact_cost and gap are empty without the oracle.
std::string summary_csv(const ExperimentResult& result);
// Raw samples: dataset,algo,trial,epsilon,iteration,rounded_cost,error.
std::string iterations_csv(const ExperimentResult& result);
// Per (algo, epsilon) means over trials on the union of sampled iterations,
// each trial's curve held constant past its last sample.
std::string curves_csv(const ExperimentResult& result);
std::string scaling_csv(const ExperimentResult& result);
std::string invariants_text(const ExperimentResult& result);
std::string error_vs_iteration_svg(const ExperimentResult& result);
std::string iterations_vs_inv_eps2_svg(const ExperimentResult& result);

// Writes summary.csv, iterations.csv, curves.csv, scaling.csv,
// invariants.txt and (unless disabled) the two SVG plots. Throws IoError.
void write_reports(const ExperimentResult& result, const std::string& out_dir);

// Mean curve for one (solver, epsilon): (k, mean rounded cost, mean error).
// The error is empty when no run carries an exact cost.
struct CurvePoint {
  std::int64_t k = 0;
  double mean_cost = 0.0;
  std::optional<double> mean_error;
};
std::vector<CurvePoint> mean_curve(const std::vector<const RunRecord*>& runs);

}  // namespace entropot::bench
