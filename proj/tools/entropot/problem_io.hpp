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

// JSON problem files: {"a": [...], "b": [...], "C": [[...]], "gamma": x,
// "delta": y}. gamma and delta are optional for the oracle.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "entropot/oracle.hpp"
#include "entropot/solve_types.hpp"

namespace entropot::cli {

struct ProblemFile {
  Vector a;
  Vector b;
  Matrix cost;
  std::optional<double> gamma;
  std::optional<double> delta;
};

// Throws IoError on malformed JSON, missing keys, wrong types or ragged C.
ProblemFile parse_problem(const nlohmann::json& doc);
ProblemFile read_problem(const std::string& path);

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);
nlohmann::json solve_to_json(const SolveResult& result, Algorithm algorithm,
                             const Problem& problem);
nlohmann::json exact_to_json(const ExactSolution& solution);

// Writes `doc` (indented) to `path`, or to `stdout_stream` when path is empty
// or "-".
void write_json(const nlohmann::json& doc, const std::string& path, std::ostream& stdout_stream);

}  // namespace entropot::cli
