// Copyright 2026 The elnet Authors
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

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace elnet {

// Largest supported ambient dimension. Per-node scratch lives on the stack.
inline constexpr int kMaxDim = 8;

// Smallest interval count: the widest boundary stencil needs six nodes and
// the endpoint jets of the order-one checks need nine.
inline constexpr int kMinIntervals = 8;

// Speeds below this abort with a regularity error.
inline constexpr double kMinSpeed = 1e-14;

// n rows (components) by N+1 columns (nodes).
using Field = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class RegularityError : public Error {
 public:
  RegularityError(const std::string& what, int curve, int node, double speed)
      : Error(what), curve_(curve), node_(node), speed_(speed) {}
  int curve() const { return curve_; }
  int node() const { return node_; }
  double speed() const { return speed_; }

 private:
  int curve_;
  int node_;
  double speed_;
};

class NonCollinearityError : public Error {
 public:
  NonCollinearityError(const std::string& what, int span_dim)
      : Error(what), span_dim_(span_dim) {}
  int span_dimension() const { return span_dim_; }

 private:
  int span_dim_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class DiffeoBreakdown : public Error {
 public:
  DiffeoBreakdown(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace elnet
