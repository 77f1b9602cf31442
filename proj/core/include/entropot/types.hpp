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

#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace entropot {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
// Row-major so that row-wise reductions walk contiguous memory.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or shape violation on user-provided data.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A quantity that must be finite overflowed during evaluation.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// File or format problems (IDX parsing, JSON problem files, output directories).
class IoError : public Error {
 public:
  using Error::Error;
};

// The exact or high-precision reference solver failed.
class OracleError : public Error {
 public:
  using Error::Error;
};

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

inline double compensated_sum(const Vector& v) {
  return compensated_sum(std::span<const double>(v.data(), static_cast<size_t>(v.size())));
}

// ||x - y||_1 with compensated accumulation.
inline double l1_distance(const Vector& x, const Vector& y) {
  CompensatedSum s;
  for (Index i = 0; i < x.size(); ++i) s.add(std::abs(x[i] - y[i]));
  return s.value();
}

}  // namespace entropot
