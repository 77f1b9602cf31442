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

#include "entropot/bench/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace entropot::bench {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

bool same_solver(const SolverChoice& x, const SolverChoice& y) {
  return x.algorithm == y.algorithm && x.variant == y.variant;
}

// (solver, epsilon) groups in ExperimentSpec order.
struct Group {
  SolverChoice solver;
  double epsilon;
  std::vector<const RunRecord*> runs;
};

std::vector<Group> groups(const ExperimentResult& result) {
  std::vector<Group> out;
  for (const SolverChoice& solver : result.spec.solvers) {
    for (double eps : result.spec.epsilons) {
      Group g{solver, eps, {}};
      for (const RunRecord& run : result.runs) {
        if (same_solver(run.solver, solver) && run.epsilon == eps) g.runs.push_back(&run);
      }
      if (!g.runs.empty()) out.push_back(std::move(g));
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

// Minimal SVG line chart.

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;
};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

Axis fit_axis(const std::vector<Series>& series, bool use_x, bool log) {
  Axis axis;
  axis.log = log;
  double lo = kInfinity;
  double hi = -kInfinity;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      const double v = use_x ? x : y;
      if (log && !(v > 0.0)) continue;
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!std::isfinite(lo)) {
    lo = log ? 1.0 : 0.0;
    hi = log ? 10.0 : 1.0;
  }
  if (log) {
    lo = std::pow(10.0, std::floor(std::log10(lo)));
    hi = std::pow(10.0, std::ceil(std::log10(hi)));
    if (hi <= lo) hi = lo * 10.0;
  } else {
    if (!use_x) lo = std::min(lo, 0.0);
    if (hi <= lo) hi = lo + 1.0;
  }
  axis.lo = lo;
  axis.hi = hi;
  return axis;
}

double unit(const Axis& axis, double v) {
  if (axis.log) return (std::log10(v) - std::log10(axis.lo)) / (std::log10(axis.hi) - std::log10(axis.lo));
  return (v - axis.lo) / (axis.hi - axis.lo);
}

std::vector<double> ticks(const Axis& axis) {
  std::vector<double> out;
  if (axis.log) {
    for (double t = axis.lo; t <= axis.hi * (1 + 1e-9); t *= 10.0) out.push_back(t);
  } else {
    for (int i = 0; i <= 5; ++i) out.push_back(axis.lo + (axis.hi - axis.lo) * i / 5.0);
  }
  return out;
}

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  bool log_x = false;
  bool log_y = false;
  bool markers = false;
};

void draw_panel(std::ostringstream& svg, const Panel& panel, double ox, double oy, double w,
                double h) {
  const double left = ox + 70.0;
  const double right = ox + w - 20.0;
  const double top = oy + 40.0;
  const double bottom = oy + h - 50.0;
  const Axis ax = fit_axis(panel.series, true, panel.log_x);
  const Axis ay = fit_axis(panel.series, false, panel.log_y);
  auto px = [&](double x) { return left + unit(ax, x) * (right - left); };
  auto py = [&](double y) { return bottom - unit(ay, y) * (bottom - top); };

  svg << "<text x=\"" << (left + right) / 2 << "\" y=\"" << oy + 22
      << "\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(panel.title) << "</text>\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
      << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (double t : ticks(ax)) {
    const double x = px(t);
    svg << "<line x1=\"" << x << "\" y1=\"" << bottom << "\" x2=\"" << x << "\" y2=\"" << bottom + 5
        << "\" stroke=\"#333\"/><text x=\"" << x << "\" y=\"" << bottom + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << short_num(t) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double y = py(t);
    svg << "<line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\"" << y
        << "\" stroke=\"#333\"/><text x=\"" << left - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << short_num(t) << "</text>\n";
  }
  svg << "<text x=\"" << (left + right) / 2 << "\" y=\"" << bottom + 38
      << "\" text-anchor=\"middle\" font-size=\"12\">" << xml_escape(panel.x_label) << "</text>\n";
  svg << "<text transform=\"translate(" << ox + 16 << "," << (top + bottom) / 2
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << xml_escape(panel.y_label)
      << "</text>\n";

  std::size_t color = 0;
  for (const Series& s : panel.series) {
    const char* stroke = kPalette[color++ % std::size(kPalette)];
    std::ostringstream path;
    bool first = true;
    for (const auto& [x, y] : s.points) {
      if ((panel.log_x && !(x > 0.0)) || (panel.log_y && !(y > 0.0))) continue;
      path << (first ? "M" : " L") << px(x) << "," << py(y);
      first = false;
      if (panel.markers) {
        svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << stroke
            << "\"/>\n";
      }
    }
    if (!first) {
      svg << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << stroke
          << "\" stroke-width=\"1.5\"/>\n";
    }
  }
  double ly = top + 12.0;
  color = 0;
  for (const Series& s : panel.series) {
    const char* stroke = kPalette[color++ % std::size(kPalette)];
    svg << "<line x1=\"" << right - 170 << "\" y1=\"" << ly - 4 << "\" x2=\"" << right - 150
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/><text x=\""
        << right - 145 << "\" y=\"" << ly << "\" font-size=\"11\">" << xml_escape(s.label)
        << "</text>\n";
    ly += 15.0;
  }
}

std::string render(const std::vector<Panel>& panels, double panel_w, double panel_h) {
  std::ostringstream svg;
  svg.precision(6);
  const double width = panel_w * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << panel_h
      << "\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    draw_panel(svg, panels[i], panel_w * static_cast<double>(i), 0.0, panel_w, panel_h);
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::vector<CurvePoint> mean_curve(const std::vector<const RunRecord*>& runs) {
  std::set<std::int64_t> ks;
  bool have_exact = !runs.empty();
  for (const RunRecord* run : runs) {
    for (const auto& sample : run->curve) ks.insert(sample.first);
    have_exact = have_exact && run->exact_cost.has_value();
  }
  std::vector<CurvePoint> out;
  for (std::int64_t k : ks) {
    CurvePoint point;
    point.k = k;
    double cost = 0.0;
    double error = 0.0;
    int count = 0;
    for (const RunRecord* run : runs) {
      if (run->curve.empty()) continue;
      auto it = std::upper_bound(
          run->curve.begin(), run->curve.end(), k,
          [](std::int64_t value, const std::pair<std::int64_t, double>& s) { return value < s.first; });
      const double v = it == run->curve.begin() ? run->curve.front().second : std::prev(it)->second;
      cost += v;
      if (have_exact) error += v - *run->exact_cost;
      ++count;
    }
    if (count == 0) continue;
    point.mean_cost = cost / count;
    if (have_exact) point.mean_error = error / count;
    out.push_back(point);
  }
  return out;
}

std::string summary_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << kSummaryHeader << "\n";
  const char* dataset = dataset_name(result.spec.dataset);
  for (const RunRecord& run : result.runs) {
    out << dataset << ',' << solver_name(run.solver) << ',' << run.trial << ',' << num(run.epsilon)
        << ',' << num(run.gamma) << ',' << num(run.delta) << ',' << run.n << ',' << run.iterations
        << ',' << num(run.rounded_cost) << ',' << opt_num(run.exact_cost) << ','
        << opt_num(run.gap) << ',' << run.theorem_bound << ',' << run.invariant_violations << "\n";
  }
  return out.str();
}

std::string iterations_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "dataset,algo,trial,epsilon,iteration,rounded_cost,error\n";
  const char* dataset = dataset_name(result.spec.dataset);
  for (const RunRecord& run : result.runs) {
    for (const auto& [k, cost] : run.curve) {
      out << dataset << ',' << solver_name(run.solver) << ',' << run.trial << ','
          << num(run.epsilon) << ',' << k << ',' << num(cost) << ','
          << (run.exact_cost ? num(cost - *run.exact_cost) : std::string()) << "\n";
    }
  }
  return out.str();
}

std::string curves_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "dataset,algo,epsilon,iteration,mean_rounded_cost,mean_error,trials\n";
  const char* dataset = dataset_name(result.spec.dataset);
  for (const Group& g : groups(result)) {
    for (const CurvePoint& p : mean_curve(g.runs)) {
      out << dataset << ',' << solver_name(g.solver) << ',' << num(g.epsilon) << ',' << p.k << ','
          << num(p.mean_cost) << ',' << opt_num(p.mean_error) << ',' << g.runs.size() << "\n";
    }
  }
  return out.str();
}

std::string scaling_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "algo,epsilon,inv_eps2,mean_iterations,slope,intercept,r_squared\n";
  for (const ScalingFit& fit : result.scaling) {
    for (std::size_t i = 0; i < fit.mean_iterations.size(); ++i) {
      const double eps = result.spec.epsilons[i];
      out << solver_name(fit.solver) << ',' << num(eps) << ',' << num(1.0 / (eps * eps)) << ','
          << num(fit.mean_iterations[i]) << ',' << num(fit.slope) << ',' << num(fit.intercept)
          << ',' << num(fit.r_squared) << "\n";
    }
  }
  return out.str();
}

std::string invariants_text(const ExperimentResult& result) {
  std::ostringstream out;
  std::int64_t evaluations = 0;
  for (const RunRecord& run : result.runs) evaluations += run.invariant_evaluations;
  out << "dataset: " << dataset_name(result.spec.dataset) << "\n";
  out << "n: " << result.n << "\n";
  out << "trials: " << result.spec.trials << "\n";
  out << "seed: " << result.spec.seed << "\n";
  out << "epsilon: " << (result.spec.relative_epsilon ? "relative to ||C||_inf" : "absolute")
      << "\n";
  out << "invariant evaluations: " << evaluations << "\n";
  out << "invariant violations: " << result.total_violations() << "\n";
  for (const std::string& note : result.notes) out << "note: " << note << "\n";
  out << "\n";
  for (const RunRecord& run : result.runs) {
    out << "trial " << run.trial << " epsilon " << num(run.epsilon) << " "
        << solver_name(run.solver) << ": iterations " << run.iterations << " (bound "
        << run.theorem_bound << ", " << (run.converged ? "converged" : "capped") << "), checks "
        << run.invariant_evaluations << ", violations " << run.invariant_violations;
    if (run.gap) out << ", gap " << num(*run.gap) << " (bound " << num(run.gap_bound) << ")";
    out << "\n";
    for (const InvariantViolation& v : run.violations) {
      out << "  violation " << v.check << " at k=" << v.k << ": " << num(v.lhs) << " > "
          << num(v.rhs) << "\n";
    }
    for (const std::string& note : run.notes) out << "  note: " << note << "\n";
  }
  if (!result.scaling.empty()) {
    out << "\niterations vs 1/eps^2:\n";
    for (const ScalingFit& fit : result.scaling) {
      out << "  " << solver_name(fit.solver) << ": slope " << num(fit.slope) << ", intercept "
          << num(fit.intercept) << ", r^2 " << num(fit.r_squared) << "\n";
    }
  }
  return out.str();
}

std::string error_vs_iteration_svg(const ExperimentResult& result) {
  std::vector<Panel> panels;
  for (const SolverChoice& solver : result.spec.solvers) {
    Panel panel;
    panel.title = solver_name(solver);
    panel.x_label = "iteration k + 1";
    panel.log_x = true;
    panel.log_y = true;
    for (const Group& g : groups(result)) {
      if (!same_solver(g.solver, solver)) continue;
      Series s;
      s.label = "eps " + short_num(g.epsilon);
      for (const CurvePoint& p : mean_curve(g.runs)) {
        const double y = p.mean_error ? *p.mean_error : p.mean_cost;
        s.points.emplace_back(static_cast<double>(p.k + 1), y);
      }
      panel.y_label = g.runs.front()->exact_cost ? "mean <C, Round(P_k)> - OT" : "mean <C, Round(P_k)>";
      panel.series.push_back(std::move(s));
    }
    panels.push_back(std::move(panel));
  }
  return render(panels, 480.0, 360.0);
}

std::string iterations_vs_inv_eps2_svg(const ExperimentResult& result) {
  std::vector<Panel> panels;
  for (const SolverChoice& solver : result.spec.solvers) {
    Panel panel;
    panel.title = solver_name(solver);
    panel.x_label = "1 / eps^2";
    panel.y_label = "mean iterations";
    panel.markers = true;
    Series measured;
    measured.label = "measured";
    Series fitted;
    for (const ScalingFit& fit : result.scaling) {
      if (!same_solver(fit.solver, solver)) continue;
      fitted.label = "fit, r^2 " + short_num(fit.r_squared);
      for (std::size_t i = 0; i < fit.mean_iterations.size(); ++i) {
        const double eps = result.spec.epsilons[i];
        const double x = 1.0 / (eps * eps);
        measured.points.emplace_back(x, fit.mean_iterations[i]);
        fitted.points.emplace_back(x, fit.intercept + fit.slope * x);
      }
    }
    std::sort(measured.points.begin(), measured.points.end());
    std::sort(fitted.points.begin(), fitted.points.end());
    panel.series.push_back(std::move(measured));
    if (!fitted.points.empty()) panel.series.push_back(std::move(fitted));
    panels.push_back(std::move(panel));
  }
  return render(panels, 420.0, 340.0);
}

void write_reports(const ExperimentResult& result, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
  write_file(dir / "summary.csv", summary_csv(result));
  write_file(dir / "iterations.csv", iterations_csv(result));
  write_file(dir / "curves.csv", curves_csv(result));
  write_file(dir / "scaling.csv", scaling_csv(result));
  write_file(dir / "invariants.txt", invariants_text(result));
  if (result.spec.write_svg) {
    write_file(dir / "error_vs_iteration.svg", error_vs_iteration_svg(result));
    write_file(dir / "iterations_vs_inv_eps2.svg", iterations_vs_inv_eps2_svg(result));
  }
}

}  // namespace entropot::bench
