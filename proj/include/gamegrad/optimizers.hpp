// Copyright 2026 The gamegrad Authors.
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

#ifndef GAMEGRAD_OPTIMIZERS_HPP_
#define GAMEGRAD_OPTIMIZERS_HPP_

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "gamegrad/game.hpp"

namespace gamegrad {

enum class Method { kNL, kLookAhead, kLola, kSos };

std::string_view to_string(Method method);
// Accepts nl, la/lookahead, lola, sos (case-insensitive).
Method parse_method(std::string_view name);

struct OptimizerConfig {
  Method method = Method::kSos;
  double alpha = 0.1;  // shared learning rate
  double a = 0.5;      // SOS alignment hyperparameter
  double b = 0.1;      // SOS gradient-norm threshold

  void validate() const;
};

struct StepRecord {
  Eigen::VectorXd theta_before;
  Eigen::VectorXd theta_after;  // theta_before - alpha * adjustment
  Eigen::VectorXd losses;
  double xi_norm = 0.0;
  std::optional<double> p;      // 0 for LookAhead, 1 for LOLA, chosen for SOS
  Eigen::VectorXd adjustment;
  Eigen::VectorXd lookahead;    // xi_0 = (I - alpha H_o) xi; empty for NL
};

// theta <- theta - alpha xi.
Eigen::VectorXd nl_field(const GameDerivatives& d);

// xi_0 = (I - alpha H_o) xi.
Eigen::VectorXd la_field(const GameDerivatives& d, double alpha);

// (I - alpha H_o) xi - alpha chi.
Eigen::VectorXd lola_field(const GameDerivatives& d, double alpha);

// xi_0 - p alpha chi; p = 0 is LookAhead and p = 1 is LOLA.
Eigen::VectorXd p_lola_field(const GameDerivatives& d, double alpha, double p);

// p = min(p1, p2). p1 is 1 unless <-alpha chi, xi_0> < 0, in which case it is
// min(1, -a |xi_0|^2 / <-alpha chi, xi_0>); p2 is |xi|^2 when |xi| < b and 1
// otherwise.
double sos_p(const GameDerivatives& d, const Eigen::VectorXd& xi0, double alpha,
             double a, double b);

struct SosField {
  Eigen::VectorXd field;
  double p = 0.0;
};

SosField sos_field(const GameDerivatives& d, double alpha, double a, double b);

// One update. Throws EvaluationError if the game cannot be evaluated at
// theta, and NumericalError if (I - alpha H_o) annihilates a nonzero xi.
StepRecord step(const Game& game, const Eigen::VectorXd& theta, const OptimizerConfig& cfg);
StepRecord step(const GameDerivatives& d, const Eigen::VectorXd& theta,
                const OptimizerConfig& cfg);

// <xi_p, xi_0> - (1 - a) |xi_0|^2, which SOS keeps nonnegative.
double sos_alignment_margin(const StepRecord& record, double a);

}  // namespace gamegrad

#endif  // GAMEGRAD_OPTIMIZERS_HPP_
