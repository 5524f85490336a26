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

// Finite-difference constructions of the game quantities, built only from
// loss evaluations. Shared by the unit and acceptance suites.

#ifndef GAMEGRAD_TESTS_FD_GAME_ORACLE_HPP_
#define GAMEGRAD_TESTS_FD_GAME_ORACLE_HPP_

#include <span>

#include <Eigen/Dense>

#include "gamegrad/diff.hpp"
#include "gamegrad/game.hpp"

namespace gamegrad::testing {

struct FdGame {
  Eigen::VectorXd xi;
  Eigen::MatrixXd hessian;
};

inline FdGame fd_game(const Game& game, const Eigen::VectorXd& theta,
                      const DiffConfig& cfg = {}) {
  const PlayerPartition& part = game.partition();
  const auto d = static_cast<Eigen::Index>(game.dim());
  FdGame out{Eigen::VectorXd(d), Eigen::MatrixXd(d, d)};
  for (std::size_t i = 0; i < game.players(); ++i) {
    const auto loss = [&game, i](auto x) { return game.loss(i, x); };
    const Eigen::VectorXd g = fd_grad(loss, theta, cfg);
    const Eigen::MatrixXd h = fd_hessian(loss, theta, cfg);
    const auto o = static_cast<Eigen::Index>(part.offset(i));
    const auto s = static_cast<Eigen::Index>(part.size(i));
    out.xi.segment(o, s) = g.segment(o, s);
    out.hessian.middleRows(o, s) = h.middleRows(o, s);
  }
  return out;
}

}  // namespace gamegrad::testing

#endif  // GAMEGRAD_TESTS_FD_GAME_ORACLE_HPP_
