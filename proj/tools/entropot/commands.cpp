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

#include "entropot/commands.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entropot/bench/experiment.hpp"
#include "entropot/bench/images.hpp"
#include "entropot/greenkhorn.hpp"
#include "entropot/invariants.hpp"
#include "entropot/oracle.hpp"
#include "entropot/problem_io.hpp"
#include "entropot/sinkhorn.hpp"

namespace entropot::cli {
namespace {

struct BenchArgs {
  std::string dataset = "synthetic";
  std::vector<std::string> algos{"sinkhorn"};
  std::vector<double> epsilons;
  bool relative_eps = false;
  int trials = 1;
  std::uint64_t seed = 0;
  int side = 0;
  std::string out_dir;
  std::string mnist_path;
  double foreground_fraction = bench::kDefaultForegroundFraction;
  bool no_invariants = false;
  bool no_oracle = false;
  bool no_reference = false;
  std::int64_t reference_iterations = 50'000;
  bool no_svg = false;
};

struct SolveArgs {
  std::string input;
  std::string output;
  std::string algo = "sinkhorn";
  std::optional<std::int64_t> max_iterations;
  bool check_invariants = false;
};

struct OracleArgs {
  std::string input;
  std::string output;
};

int run_bench(const BenchArgs& args, std::ostream& out) {
  bench::ExperimentSpec spec;
  if (args.dataset == "mnist") {
    spec.dataset = bench::Dataset::Mnist;
  } else if (args.dataset == "synthetic") {
    spec.dataset = bench::Dataset::Synthetic;
  } else {
    throw InvalidArgument("unknown dataset '" + args.dataset + "'");
  }
  spec.solvers.clear();
  for (const std::string& name : args.algos) spec.solvers.push_back(bench::parse_solver(name));
  spec.epsilons = args.epsilons;
  spec.relative_epsilon = args.relative_eps;
  spec.trials = args.trials;
  spec.seed = args.seed;
  spec.side = args.side;
  spec.mnist_path = args.mnist_path;
  spec.foreground_fraction = args.foreground_fraction;
  spec.check_invariants = !args.no_invariants;
  spec.use_oracle = !args.no_oracle;
  spec.use_reference = !args.no_reference;
  spec.reference_max_iterations = args.reference_iterations;
  spec.write_svg = !args.no_svg;
  bench::validate(spec);

  const bench::ExperimentResult result = bench::run_experiment(spec, args.out_dir);
  for (const bench::RunRecord& run : result.runs) {
    out << "trial " << run.trial << " eps " << run.epsilon << " " << bench::solver_name(run.solver)
        << ": " << run.iterations << " iterations";
    if (run.gap) out << ", gap " << *run.gap;
    if (run.invariant_violations > 0) out << ", " << run.invariant_violations << " violations";
    out << "\n";
  }
  out << "wrote " << args.out_dir << " (" << result.total_violations()
      << " invariant violations)\n";
  return result.total_violations() > 0 ? kExitInvariant : kExitOk;
}

int run_solve(const SolveArgs& args, std::ostream& out) {
  const ProblemFile file = read_problem(args.input);
  if (!file.gamma) throw IoError("problem file: \"gamma\" is required for solve");
  if (!file.delta) throw IoError("problem file: \"delta\" is required for solve");
  Algorithm algorithm;
  if (args.algo == "sinkhorn") {
    algorithm = Algorithm::Sinkhorn;
  } else if (args.algo == "greenkhorn") {
    algorithm = Algorithm::Greenkhorn;
  } else {
    throw InvalidArgument("unknown algorithm '" + args.algo + "'");
  }
  const Problem problem(file.a, file.b, file.cost, *file.gamma);
  SolverConfig config;
  config.delta = *file.delta;
  config.max_iterations = args.max_iterations;

  // Sinkhorn needs positive marginals; Greenkhorn compacts on its own.
  std::optional<std::pair<Problem, CompactionMap>> compact;
  if (algorithm == Algorithm::Sinkhorn && problem.has_zero_marginal()) {
    compact.emplace(compact_zeros(problem));
  }
  const Problem& solved = compact ? compact->first : problem;

  std::optional<SinkhornInvariantMonitor> sinkhorn_monitor;
  std::optional<GreenkhornInvariantMonitor> greenkhorn_monitor;
  if (args.check_invariants) {
    if (algorithm == Algorithm::Sinkhorn) {
      sinkhorn_monitor.emplace(solved);
      config.observer = sinkhorn_monitor->observer();
    } else {
      greenkhorn_monitor.emplace(solved);
      config.observer = greenkhorn_monitor->observer();
    }
  }

  SolveResult result = algorithm == Algorithm::Sinkhorn ? sinkhorn_solve(solved, config)
                                                        : greenkhorn_solve(solved, config);
  std::int64_t violations = 0;
  if (sinkhorn_monitor) {
    sinkhorn_monitor->finish(result, sinkhorn_iteration_bound(solved.cost_inf_norm(),
                                                              solved.gamma(), config.delta));
    violations = static_cast<std::int64_t>(sinkhorn_monitor->report().violations.size());
  }
  if (greenkhorn_monitor) {
    greenkhorn_monitor->finish(
        result, greenkhorn_iteration_bound(std::max(solved.rows(), solved.cols()),
                                           solved.cost_inf_norm(), solved.gamma(), config.delta));
    violations = static_cast<std::int64_t>(greenkhorn_monitor->report().violations.size());
  }
  if (compact) {
    result.plan = embed_plan(result.plan, compact->second);
    result.potentials = embed_potentials(result.potentials, compact->second);
    result.violation = marginal_violations(result.plan, problem);
  }

  nlohmann::json doc = solve_to_json(result, algorithm, problem);
  doc["delta"] = config.delta;
  if (args.check_invariants) doc["invariant_violations"] = violations;
  write_json(doc, args.output, out);
  return violations > 0 ? kExitInvariant : kExitOk;
}

int run_oracle(const OracleArgs& args, std::ostream& out) {
  const ProblemFile file = read_problem(args.input);
  write_json(exact_to_json(exact_ot(file.a, file.b, file.cost)), args.output, out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropic optimal transport solvers and benchmarks"};
  app.require_subcommand(1);

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Run the benchmark grid and write CSV/SVG reports");
  bench->add_option("--dataset", bench_args.dataset, "mnist or synthetic")
      ->check(CLI::IsMember({"mnist", "synthetic"}))
      ->capture_default_str();
  bench->add_option("--algo", bench_args.algos,
                    "Comma list of sinkhorn, sinkhorn-lifted, greenkhorn, greenkhorn-lifted")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--eps", bench_args.epsilons, "Comma list of target accuracies")
      ->delimiter(',')
      ->required();
  bench->add_flag("--relative-eps", bench_args.relative_eps,
                  "Read --eps as multiples of max(C)");
  bench->add_option("--trials", bench_args.trials, "Image pairs per epsilon")
      ->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "Sampling seed")->capture_default_str();
  bench->add_option("--side", bench_args.side,
                    "Image side length (default 16 for mnist, 20 for synthetic)");
  bench->add_option("--out", bench_args.out_dir, "Output directory")->required();
  bench->add_option("--mnist-path", bench_args.mnist_path, "IDX3 image file");
  bench->add_option("--foreground-fraction", bench_args.foreground_fraction,
                    "Synthetic foreground pixel fraction")
      ->capture_default_str();
  bench->add_flag("--no-invariants", bench_args.no_invariants, "Skip the invariant monitors");
  bench->add_flag("--no-oracle", bench_args.no_oracle, "Skip the exact solver (no gaps)");
  bench->add_flag("--no-reference", bench_args.no_reference,
                  "Skip the reference dual optimum used by some invariants");
  bench->add_option("--reference-iterations", bench_args.reference_iterations,
                    "Iteration cap for the reference dual optimum")
      ->capture_default_str();
  bench->add_flag("--no-svg", bench_args.no_svg, "Do not write SVG plots");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve one JSON problem and print the plan");
  solve->add_option("input", solve_args.input, "Problem file")->required();
  solve->add_option("-o,--out", solve_args.output, "Output file (default stdout)");
  solve->add_option("--algo", solve_args.algo, "sinkhorn or greenkhorn")
      ->check(CLI::IsMember({"sinkhorn", "greenkhorn"}))
      ->capture_default_str();
  solve->add_option("--max-iterations", solve_args.max_iterations, "Iteration cap");
  solve->add_flag("--check-invariants", solve_args.check_invariants,
                  "Monitor the per-iteration invariants (exit 2 on a violation)");

  OracleArgs oracle_args;
  CLI::App* oracle = app.add_subcommand("oracle", "Exact transport optimum of a JSON problem");
  oracle->add_option("input", oracle_args.input, "Problem file")->required();
  oracle->add_option("-o,--out", oracle_args.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const bool from_file = !bench->parsed();
  try {
    if (bench->parsed()) return run_bench(bench_args, out);
    if (solve->parsed()) return run_solve(solve_args, out);
    return run_oracle(oracle_args, out);
  } catch (const IoError& e) {
    err << "entropot: " << e.what() << "\n";
    return kExitIo;
  } catch (const OracleError& e) {
    err << "entropot: oracle failure: " << e.what() << "\n";
    return kExitOracle;
  } catch (const InvalidArgument& e) {
    err << "entropot: " << e.what() << "\n";
    // Bad values inside a problem file are format errors.
    return from_file ? kExitIo : kExitUsage;
  } catch (const std::exception& e) {
    err << "entropot: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace entropot::cli
