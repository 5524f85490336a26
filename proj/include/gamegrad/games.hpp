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

// Concrete games: matching pennies, the hidden-saddle game, the tandem game,
// the memory-1 iterated prisoner's dilemma with exact discounted values, and
// quadratic games realizing a prescribed game Hessian.

#ifndef GAMEGRAD_GAMES_HPP_
#define GAMEGRAD_GAMES_HPP_

#include <array>
#include <string>

#include <Eigen/Dense>

#include "gamegrad/game.hpp"

namespace gamegrad {

// L^1 = xy, L^2 = -xy.
Game matching_pennies();

// L^1 = L^2 = xy. The origin is a Nash equilibrium but a saddle of xy.
Game hidden_saddle();

// L^1 = (x+y)^2 - 2x, L^2 = (x+y)^2 - 2y.
Game tandem();

// Value c(alpha) with LOLA's tandem rest points on the line x + y = c(alpha).
// Throws std::invalid_argument at the pole alpha = 1/4.
double lola_fixed_line(double alpha);

// Joint actions in the order (CC, CD, DC, DD); the first letter is player 1's
// action. Memory states use the same labels for both players.
inline constexpr std::size_t kIpdJointActions = 4;
inline constexpr std::size_t kIpdParamsPerPlayer = 5;  // start state + 4

struct IpdSpec {
  double gamma = 0.96;
  // loss_table[player][joint action].
  std::array<std::array<double, kIpdJointActions>, 2> loss_table{{
      {1.0, 3.0, 0.0, 2.0},
      {1.0, 0.0, 3.0, 2.0},
  }};
  // Multiply the discounted value by (1 - gamma) so stationary play yields the
  // stage loss.
  bool normalize = true;

  void validate() const;
};

// Two players with 5 cooperation logits each, at (start, CC, CD, DC, DD).
// The loss is the exact expected discounted loss, from a 4-state linear solve
// carried out in dual arithmetic.
Game ipd(const IpdSpec& spec = {});

struct QuadraticGameSpec {
  Eigen::MatrixXd matrix;
  PlayerPartition partition;
};

// L^i = 1/2 th_i^T M_ii th_i + th_i^T sum_{j != i} M_ij th_j, whose
// simultaneous gradient is M theta and whose game Hessian is M everywhere.
// Rejects diagonal blocks that are not symmetric.
Game quadratic_game(const QuadraticGameSpec& spec);

// 4x4 admissible Hessian whose LookAhead matrix (I - alpha H_o) H is positive
// stable but not positive definite for small alpha.
Eigen::MatrixXd appendix_d_matrix();

// Builds a game by name: matching_pennies, hidden_saddle, tandem, ipd,
// appendix_d. Throws ConfigError for unknown names.
Game game_by_name(const std::string& name, const IpdSpec& ipd_spec = {});

}  // namespace gamegrad

#endif  // GAMEGRAD_GAMES_HPP_
