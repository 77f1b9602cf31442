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

#include "entropot/problem_io.hpp"

#include <fstream>
#include <ostream>

#include "entropot/rounding.hpp"

namespace entropot::cli {
namespace {

using nlohmann::json;

Vector parse_vector(const json& doc, const char* key) {
  if (!doc.contains(key)) throw IoError(std::string("problem file: missing \"") + key + "\"");
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw IoError(std::string("problem file: \"") + key + "\" is not an array");
  Vector v(static_cast<Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw IoError(std::string("problem file: \"") + key + "\"[" + std::to_string(i) +
                    "] is not a number");
    }
    v[static_cast<Index>(i)] = arr[i].get<double>();
  }
  return v;
}

std::optional<double> parse_scalar(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  if (!doc.at(key).is_number()) {
    throw IoError(std::string("problem file: \"") + key + "\" is not a number");
  }
  return doc.at(key).get<double>();
}

// JSON has no infinity; -inf potentials (removed coordinates) become null.
json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

ProblemFile parse_problem(const json& doc) {
  if (!doc.is_object()) throw IoError("problem file: top level must be an object");
  ProblemFile p;
  p.a = parse_vector(doc, "a");
  p.b = parse_vector(doc, "b");
  if (!doc.contains("C") || !doc.at("C").is_array()) {
    throw IoError("problem file: \"C\" must be an array of rows");
  }
  const json& rows = doc.at("C");
  if (rows.size() != static_cast<std::size_t>(p.a.size())) {
    throw IoError("problem file: C has " + std::to_string(rows.size()) + " rows, a has " +
                  std::to_string(p.a.size()) + " entries");
  }
  p.cost.resize(p.a.size(), p.b.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(p.b.size())) {
      throw IoError("problem file: row " + std::to_string(i) + " of C must have " +
                    std::to_string(p.b.size()) + " numbers");
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_number()) {
        throw IoError("problem file: C[" + std::to_string(i) + "][" + std::to_string(j) +
                      "] is not a number");
      }
      p.cost(static_cast<Index>(i), static_cast<Index>(j)) = row[j].get<double>();
    }
  }
  p.gamma = parse_scalar(doc, "gamma");
  p.delta = parse_scalar(doc, "delta");
  return p;
}

ProblemFile read_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
  return parse_problem(doc);
}

json to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(number_or_null(v[i]));
  return arr;
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(number_or_null(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json solve_to_json(const SolveResult& result, Algorithm algorithm, const Problem& problem) {
  const TransportPlan rounded = round_to_polytope(result.plan, problem.a(), problem.b());
  json doc;
  doc["algorithm"] = to_string(algorithm);
  doc["gamma"] = problem.gamma();
  doc["iterations"] = result.iterations;
  doc["termination"] = to_string(result.termination);
  doc["violation"] = {{"row", result.violation.row}, {"col", result.violation.col}};
  doc["plan"] = to_json(result.plan.matrix());
  doc["f"] = to_json(result.potentials.f);
  doc["g"] = to_json(result.potentials.g);
  doc["rounded_plan"] = to_json(rounded.matrix());
  doc["rounded_cost"] = certified_cost(rounded, problem);
  return doc;
}

json exact_to_json(const ExactSolution& solution) {
  json doc;
  doc["cost"] = solution.cost;
  doc["plan"] = to_json(solution.plan.matrix());
  doc["u"] = to_json(solution.u);
  doc["v"] = to_json(solution.v);
  doc["min_reduced_cost"] = solution.min_reduced_cost;
  doc["primal_residual"] = solution.primal_residual;
  doc["pivots"] = solution.pivots;
  return doc;
}

void write_json(const json& doc, const std::string& path, std::ostream& stdout_stream) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    stdout_stream << text;
    stdout_stream.flush();
    if (!stdout_stream) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace entropot::cli
