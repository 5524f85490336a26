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

#include "gamegrad/games.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamegrad/dense_solve.hpp"
#include "gamegrad/dual.hpp"
#include "gamegrad/errors.hpp"

namespace gamegrad {

Game matching_pennies() {
  return Game("matching_pennies", PlayerPartition::uniform(2),
              [](std::size_t i, auto t) {
                auto xy = t[0] * t[1];
                return i == 0 ? xy : -xy;
              });
}

Game hidden_saddle() {
  return Game("hidden_saddle", PlayerPartition::uniform(2),
              [](std::size_t, auto t) { return t[0] * t[1]; });
}

Game tandem() {
  return Game("tandem", PlayerPartition::uniform(2), [](std::size_t i, auto t) {
    auto s = t[0] + t[1];
    return s * s - 2.0 * t[i];
  });
}

double lola_fixed_line(double alpha) {
  if (std::abs(1.0 - 4.0 * alpha) < 1e-12) {
    throw std::invalid_argument("lola_fixed_line: alpha = 1/4 is a pole");
  }
  return (1.0 - 2.0 * alpha) / (1.0 - 4.0 * alpha);
}

void IpdSpec::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw ConfigError("ipd: gamma must lie in [0, 1), got " + std::to_string(gamma));
  }
  for (const auto& row : loss_table) {
    for (double v : row) {
      if (!std::isfinite(v)) throw ConfigError("ipd: loss table must be finite");
    }
  }
}

namespace {

template <class S>
std::array<S, kIpdJointActions> joint_distribution(const S& logit1, const S& logit2) {
  const S c1 = sigmoid(logit1), d1 = sigmoid(-logit1);
  const S c2 = sigmoid(logit2), d2 = sigmoid(-logit2);
  return {c1 * c2, c1 * d2, d1 * c2, d1 * d2};
}

template <class S>
S ipd_loss(const IpdSpec& spec, std::size_t player, std::span<const S> theta) {
  constexpr std::size_t n = kIpdJointActions;
  constexpr std::size_t p2 = kIpdParamsPerPlayer;
  const auto start = joint_distribution(theta[0], theta[p2]);

  // (I - gamma P) v = l with P[s][s'] the probability of joint action s'
  // after memory state s.
  std::array<std::array<S, n>, n> system;
  for (std::size_t s = 0; s < n; ++s) {
    const auto next = joint_distribution(theta[1 + s], theta[p2 + 1 + s]);
    for (std::size_t t = 0; t < n; ++t) {
      system[s][t] = (s == t ? S(1.0) : S(0.0)) - spec.gamma * next[t];
    }
  }
  std::array<S, n> stage;
  for (std::size_t s = 0; s < n; ++s) stage[s] = S(spec.loss_table[player][s]);
  const auto v = lu_solve(std::move(system), std::move(stage));

  S value(0.0);
  for (std::size_t s = 0; s < n; ++s) value += start[s] * v[s];
  return spec.normalize ? value * (1.0 - spec.gamma) : value;
}

}  // namespace

Game ipd(const IpdSpec& spec) {
  spec.validate();
  return Game("ipd", PlayerPartition::uniform(2, kIpdParamsPerPlayer),
              [spec](std::size_t i, auto t) { return ipd_loss(spec, i, t); });
}

Game quadratic_game(const QuadraticGameSpec& spec) {
  const PlayerPartition& part = spec.partition;
  const auto d = static_cast<Eigen::Index>(part.dim());
  if (spec.matrix.rows() != d || spec.matrix.cols() != d) {
    throw ConfigError("quadratic game: matrix is " + std::to_string(spec.matrix.rows()) +
                      "x" + std::to_string(spec.matrix.cols()) + " but partition has " +
                      std::to_string(d) + " parameters");
  }
  for (std::size_t i = 0; i < part.players(); ++i) {
    const auto o = static_cast<Eigen::Index>(part.offset(i));
    const auto s = static_cast<Eigen::Index>(part.size(i));
    const Eigen::MatrixXd block = spec.matrix.block(o, o, s, s);
    const double scale = std::max(1.0, block.cwiseAbs().maxCoeff());
    if ((block - block.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw ConfigError("quadratic game: diagonal block of player " + std::to_string(i) +
                        " is not symmetric");
    }
  }
  return Game("quadratic", part, [m = spec.matrix, part](std::size_t i, auto t) {
    using S = typename decltype(t)::value_type;
    const std::size_t oi = part.offset(i), si = part.size(i);
    S value(0.0);
    for (std::size_t a = 0; a < si; ++a) {
      for (std::size_t c = 0; c < part.dim(); ++c) {
        const double mac = m(oi + a, c);
        if (mac == 0.0) continue;
        const bool own = c >= oi && c < oi + si;
        value += t[oi + a] * t[c] * (own ? 0.5 * mac : mac);
      }
    }
    return value;
  });
}

Eigen::MatrixXd appendix_d_matrix() {
  Eigen::MatrixXd h(4, 4);
  h << 9, -4, -3, -3,
      -2, 1, 2, 1,
      -3, 0, 1, 0,
      -3, 1, 2, 1;
  return h;
}

Game game_by_name(const std::string& name, const IpdSpec& ipd_spec) {
  if (name == "matching_pennies") return matching_pennies();
  if (name == "hidden_saddle") return hidden_saddle();
  if (name == "tandem") return tandem();
  if (name == "ipd") return ipd(ipd_spec);
  if (name == "appendix_d") {
    return quadratic_game({appendix_d_matrix(), PlayerPartition::uniform(4)});
  }
  throw ConfigError("unknown game '" + name +
                    "' (expected matching_pennies, hidden_saddle, tandem, ipd, appendix_d)");
}

}  // namespace gamegrad
