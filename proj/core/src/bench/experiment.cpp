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

#include "entropot/bench/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entropot/bench/images.hpp"
#include "entropot/bench/report.hpp"
#include "entropot/epsilon.hpp"
#include "entropot/greenkhorn.hpp"
#include "entropot/oracle.hpp"
#include "entropot/rounding.hpp"
#include "entropot/sinkhorn.hpp"

namespace entropot::bench {
namespace {

// Iterations at which curves are sampled: every k below 10, then ~15% apart.
std::int64_t next_sample(std::int64_t k) {
  if (k < 10) return k + 1;
  return std::max(k + 1, static_cast<std::int64_t>(std::ceil(static_cast<double>(k) * 1.15)));
}

class CurveSampler {
 public:
  CurveSampler(const Instance& inst, const EpsilonSetup& setup) : inst_(inst), setup_(setup) {}

  void observe(const IterationState& s) {
    if (s.k != next_) return;
    next_ = next_sample(s.k);
    TransportPlan plan = s.plan != nullptr ? *s.plan : plan_from_potentials(s.problem, s.potentials);
    add(s.k, plan);
  }

  void finish(std::int64_t iterations, const TransportPlan& full_plan) {
    if (!points_.empty() && points_.back().first == iterations) return;
    add_full(iterations, full_plan);
  }

  std::vector<std::pair<std::int64_t, double>> take() { return std::move(points_); }

 private:
  void add(std::int64_t k, const TransportPlan& plan) {
    if (setup_.compaction) {
      add_full(k, embed_plan(plan, *setup_.compaction));
    } else {
      add_full(k, plan);
    }
  }

  void add_full(std::int64_t k, const TransportPlan& plan) {
    const TransportPlan rounded = round_to_polytope(plan, inst_.a, inst_.b);
    points_.emplace_back(k, certified_cost(rounded, inst_.cost));
  }

  const Instance& inst_;
  const EpsilonSetup& setup_;
  std::int64_t next_ = 0;
  std::vector<std::pair<std::int64_t, double>> points_;
};

RunRecord run_cell(const ExperimentSpec& spec, const Instance& inst, int trial, double epsilon,
                   const SolverChoice& solver, std::optional<double> exact_cost) {
  RunRecord rec;
  rec.trial = trial;
  rec.epsilon = epsilon;
  rec.solver = solver;
  rec.n = inst.a.size();
  rec.exact_cost = exact_cost;
  const double c_norm = inst.cost.size() > 0 ? inst.cost.maxCoeff() : 0.0;
  rec.epsilon_abs = spec.relative_epsilon ? epsilon * c_norm : epsilon;
  if (spec.relative_epsilon && c_norm == 0.0) {
    throw InvalidArgument("relative epsilon needs a nonzero cost matrix");
  }

  const EpsilonSetup setup =
      epsilon_setup(solver.algorithm, inst.a, inst.b, inst.cost, rec.epsilon_abs, solver.variant);
  rec.gamma = setup.gamma;
  rec.delta = setup.delta;
  rec.theorem_bound = setup.iteration_bound;

  std::optional<SinkhornInvariantMonitor> sinkhorn_monitor;
  std::optional<GreenkhornInvariantMonitor> greenkhorn_monitor;
  if (spec.check_invariants && setup.problem) {
    MonitorOptions mo;
    if (spec.use_reference) {
      try {
        ReferenceOptions ro;
        ro.max_iterations = spec.reference_max_iterations;
        mo.reference = reference_dual_optimum(*setup.problem, ro);
      } catch (const OracleError& e) {
        rec.notes.push_back(std::string("reference optimum unavailable; reference checks skipped (") +
                            e.what() + ")");
      }
    }
    if (exact_cost && solver.variant == Variant::Vanilla && !setup.compaction) {
      mo.exact_cost = exact_cost;
    }
    if (solver.algorithm == Algorithm::Sinkhorn) {
      sinkhorn_monitor.emplace(*setup.problem, std::move(mo));
    } else {
      mo.certificate_stride = std::max(setup.problem->rows(), setup.problem->cols());
      greenkhorn_monitor.emplace(*setup.problem, std::move(mo));
    }
  }

  CurveSampler sampler(inst, setup);
  EpsilonOptions options;
  options.observer = [&](const IterationState& s) {
    if (sinkhorn_monitor) sinkhorn_monitor->observe(s);
    if (greenkhorn_monitor) greenkhorn_monitor->observe(s);
    sampler.observe(s);
  };
  const EpsilonSolveResult out =
      solver.algorithm == Algorithm::Sinkhorn
          ? sinkhorn_epsilon_solve(inst.a, inst.b, inst.cost, rec.epsilon_abs, solver.variant,
                                   options)
          : greenkhorn_epsilon_solve(inst.a, inst.b, inst.cost, rec.epsilon_abs, solver.variant,
                                     options);
  const SolveResult& r = out.result;
  rec.iterations = r.iterations;
  rec.converged = r.converged();
  if (!out.note.empty()) rec.notes.push_back(out.note);
  if (!rec.converged) rec.notes.push_back("iteration cap reached before convergence");
  sampler.finish(r.iterations, r.plan);
  rec.curve = sampler.take();

  const InvariantReport* report = nullptr;
  if (sinkhorn_monitor) {
    sinkhorn_monitor->finish(r, setup.iteration_bound);
    report = &sinkhorn_monitor->report();
  } else if (greenkhorn_monitor) {
    greenkhorn_monitor->finish(r, setup.iteration_bound);
    report = &greenkhorn_monitor->report();
  }
  if (report != nullptr) {
    rec.invariant_violations = static_cast<std::int64_t>(report->violations.size());
    rec.invariant_evaluations = report->total_evaluations();
    rec.violations = report->violations;
    if (report->initial_gap_within_2c) {
      std::ostringstream note;
      note << "initial dual gap " << *report->initial_gap
           << (*report->initial_gap_within_2c ? " is" : " is not") << " within 2 ||C||_inf";
      rec.notes.push_back(note.str());
    }
  }

  const Problem original(inst.a, inst.b, inst.cost, setup.gamma);
  if (exact_cost) {
    const Certificate cert =
        certify_plan(r.plan, original, rec.epsilon_abs, solver.algorithm, exact_cost);
    rec.rounded_cost = cert.rounded_cost;
    rec.gap = cert.gap;
    rec.gap_bound = cert.bound;
  } else {
    rec.rounded_cost =
        certified_cost(round_to_polytope(r.plan, inst.a, inst.b), inst.cost);
    rec.gap_bound = certificate_bound(solver.algorithm, rec.n, setup.gamma,
                                      marginal_violations(r.plan, original).sum(),
                                      original.cost_inf_norm());
  }
  return rec;
}

void add_scaling(const ExperimentSpec& spec, ExperimentResult& result) {
  if (spec.epsilons.size() < 2) return;
  for (const SolverChoice& solver : spec.solvers) {
    ScalingFit fit;
    fit.solver = solver;
    std::vector<double> x;
    for (double eps : spec.epsilons) {
      double iterations = 0.0;
      double eps_abs = 0.0;
      int count = 0;
      for (const RunRecord& run : result.runs) {
        if (run.epsilon == eps && run.solver.algorithm == solver.algorithm &&
            run.solver.variant == solver.variant) {
          iterations += static_cast<double>(run.iterations);
          eps_abs += run.epsilon_abs;
          ++count;
        }
      }
      fit.epsilons.push_back(eps_abs / count);
      fit.mean_iterations.push_back(iterations / count);
      x.push_back(1.0 / (eps * eps));
    }
    const LinearFit line = fit_line(x, fit.mean_iterations);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    result.scaling.push_back(std::move(fit));
  }
}

// Larger epsilon should not need more iterations; reported, never enforced.
void add_monotonicity_notes(const ExperimentSpec& spec, ExperimentResult& result) {
  if (spec.epsilons.size() < 2) return;
  for (int t = 0; t < spec.trials; ++t) {
    for (const SolverChoice& solver : spec.solvers) {
      std::vector<std::pair<double, std::int64_t>> cells;
      for (const RunRecord& run : result.runs) {
        if (run.trial == t && run.solver.algorithm == solver.algorithm &&
            run.solver.variant == solver.variant) {
          cells.emplace_back(run.epsilon, run.iterations);
        }
      }
      std::sort(cells.begin(), cells.end());
      for (std::size_t i = 1; i < cells.size(); ++i) {
        if (cells[i].second > cells[i - 1].second) {
          std::ostringstream note;
          note << "trial " << t << " " << solver_name(solver) << ": iterations increase from "
               << cells[i - 1].second << " to " << cells[i].second << " between epsilon "
               << cells[i - 1].first << " and " << cells[i].first;
          result.notes.push_back(note.str());
        }
      }
    }
  }
}

}  // namespace

std::string solver_name(const SolverChoice& choice) {
  std::string name = to_string(choice.algorithm);
  if (choice.variant == Variant::Lifted) name += "-lifted";
  return name;
}

SolverChoice parse_solver(const std::string& name) {
  if (name == "sinkhorn") return {Algorithm::Sinkhorn, Variant::Vanilla};
  if (name == "sinkhorn-lifted") return {Algorithm::Sinkhorn, Variant::Lifted};
  if (name == "greenkhorn") return {Algorithm::Greenkhorn, Variant::Vanilla};
  if (name == "greenkhorn-lifted") return {Algorithm::Greenkhorn, Variant::Lifted};
  throw InvalidArgument("unknown algorithm '" + name + "'");
}

const char* dataset_name(Dataset dataset) {
  return dataset == Dataset::Mnist ? "mnist" : "synthetic";
}

void validate(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw InvalidArgument("experiment: trials must be at least 1");
  if (spec.epsilons.empty()) throw InvalidArgument("experiment: no epsilon given");
  for (double eps : spec.epsilons) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw InvalidArgument("experiment: epsilons must be positive");
    }
  }
  if (spec.solvers.empty()) throw InvalidArgument("experiment: no algorithm selected");
  if (spec.side < 0) throw InvalidArgument("experiment: side must be positive");
  if (spec.dataset == Dataset::Mnist && spec.mnist_path.empty()) {
    throw InvalidArgument("experiment: the mnist dataset needs an image file path");
  }
}

std::int64_t ExperimentResult::total_violations() const {
  std::int64_t total = 0;
  for (const RunRecord& run : runs) total += run.invariant_violations;
  return total;
}

std::vector<Instance> make_instances(const ExperimentSpec& spec) {
  validate(spec);
  const bool mnist = spec.dataset == Dataset::Mnist;
  const int side = spec.side > 0 ? spec.side : (mnist ? kDefaultMnistSide : kDefaultSyntheticSide);
  const std::vector<ImageHistogram> images =
      mnist ? load_mnist(spec.mnist_path, 2 * spec.trials, spec.seed, side)
            : synthetic_images(2 * spec.trials, side, spec.foreground_fraction, spec.seed);
  const Matrix cost = pixel_cost(side);
  std::vector<Instance> out;
  for (int t = 0; t < spec.trials; ++t) {
    out.push_back({images[static_cast<std::size_t>(2 * t)].pixels,
                   images[static_cast<std::size_t>(2 * t + 1)].pixels, cost});
  }
  return out;
}

ExperimentResult run_instances(const ExperimentSpec& spec, const std::vector<Instance>& instances) {
  validate(spec);
  if (static_cast<int>(instances.size()) != spec.trials) {
    throw InvalidArgument("experiment: expected one instance per trial");
  }
  ExperimentResult result;
  result.spec = spec;
  result.n = instances.empty() ? 0 : instances.front().a.size();
  for (int t = 0; t < spec.trials; ++t) {
    const Instance& inst = instances[static_cast<std::size_t>(t)];
    std::optional<double> exact;
    if (spec.use_oracle) exact = exact_ot(inst.a, inst.b, inst.cost).cost;
    for (double eps : spec.epsilons) {
      for (const SolverChoice& solver : spec.solvers) {
        result.runs.push_back(run_cell(spec, inst, t, eps, solver, exact));
      }
    }
  }
  if (!spec.use_oracle) result.notes.push_back("exact oracle disabled; gaps not reported");
  if (!spec.check_invariants) result.notes.push_back("invariant monitors disabled");
  add_scaling(spec, result);
  add_monotonicity_notes(spec, result);
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const std::string& out_dir) {
  ExperimentResult result = run_instances(spec, make_instances(spec));
  write_reports(result, out_dir);
  return result;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("fit_line: needs two or more paired samples");
  }
  const double m = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  if (sxx == 0.0) throw InvalidArgument("fit_line: x values are all equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : 1.0 - ss_res / syy;
  return fit;
}

}  // namespace entropot::bench
