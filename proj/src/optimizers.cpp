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

#include "gamegrad/optimizers.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "gamegrad/errors.hpp"

namespace gamegrad {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kNL: return "nl";
    case Method::kLookAhead: return "la";
    case Method::kLola: return "lola";
    case Method::kSos: return "sos";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "nl" || lower == "naive") return Method::kNL;
  if (lower == "la" || lower == "lookahead") return Method::kLookAhead;
  if (lower == "lola") return Method::kLola;
  if (lower == "sos") return Method::kSos;
  throw ConfigError("unknown optimizer '" + std::string(name) +
                    "' (expected nl, la, lola, sos)");
}

void OptimizerConfig::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("optimizer: alpha must be positive");
  if (!(a > 0.0 && a < 1.0)) throw ConfigError("optimizer: a must lie in (0, 1)");
  if (!(b > 0.0 && b < 1.0)) throw ConfigError("optimizer: b must lie in (0, 1)");
}

Eigen::VectorXd nl_field(const GameDerivatives& d) { return d.xi; }

Eigen::VectorXd la_field(const GameDerivatives& d, double alpha) {
  return d.xi - alpha * (d.h_o * d.xi);
}

Eigen::VectorXd lola_field(const GameDerivatives& d, double alpha) {
  return p_lola_field(d, alpha, 1.0);
}

Eigen::VectorXd p_lola_field(const GameDerivatives& d, double alpha, double p) {
  return la_field(d, alpha) - (p * alpha) * d.chi;
}

double sos_p(const GameDerivatives& d, const Eigen::VectorXd& xi0, double alpha,
             double a, double b) {
  const double shaping_dot = -alpha * d.chi.dot(xi0);
  double p1 = 1.0;
  if (shaping_dot < 0.0) p1 = std::min(1.0, -a * xi0.squaredNorm() / shaping_dot);
  const double xi_norm = d.xi.norm();
  const double p2 = xi_norm < b ? xi_norm * xi_norm : 1.0;
  return std::min(p1, p2);
}

SosField sos_field(const GameDerivatives& d, double alpha, double a, double b) {
  const Eigen::VectorXd xi0 = la_field(d, alpha);
  const double p = sos_p(d, xi0, alpha, a, b);
  return {xi0 - (p * alpha) * d.chi, p};
}

namespace {

void require_nondegenerate(const GameDerivatives& d, const Eigen::VectorXd& xi0,
                           double alpha) {
  if (xi0.isZero(0.0) && !d.xi.isZero(0.0)) {
    throw NumericalError("I - alpha H_o is singular on xi (alpha = " + std::to_string(alpha) +
                         "); use a smaller learning rate");
  }
}

}  // namespace

StepRecord step(const GameDerivatives& d, const Eigen::VectorXd& theta,
                const OptimizerConfig& cfg) {
  cfg.validate();
  StepRecord r;
  r.theta_before = theta;
  r.losses = d.losses;
  r.xi_norm = d.xi.norm();
  switch (cfg.method) {
    case Method::kNL:
      r.adjustment = nl_field(d);
      break;
    case Method::kLookAhead:
      r.lookahead = la_field(d, cfg.alpha);
      require_nondegenerate(d, r.lookahead, cfg.alpha);
      r.adjustment = r.lookahead;
      r.p = 0.0;
      break;
    case Method::kLola:
      r.lookahead = la_field(d, cfg.alpha);
      r.adjustment = r.lookahead - cfg.alpha * d.chi;
      r.p = 1.0;
      break;
    case Method::kSos: {
      r.lookahead = la_field(d, cfg.alpha);
      require_nondegenerate(d, r.lookahead, cfg.alpha);
      const double p = sos_p(d, r.lookahead, cfg.alpha, cfg.a, cfg.b);
      r.adjustment = r.lookahead - (p * cfg.alpha) * d.chi;
      r.p = p;
      break;
    }
  }
  r.theta_after = theta - cfg.alpha * r.adjustment;
  return r;
}

StepRecord step(const Game& game, const Eigen::VectorXd& theta, const OptimizerConfig& cfg) {
  return step(derivatives(game, theta), theta, cfg);
}

double sos_alignment_margin(const StepRecord& record, double a) {
  const double x0 = record.lookahead.squaredNorm();
  return record.adjustment.dot(record.lookahead) - (1.0 - a) * x0;
}

}  // namespace gamegrad
