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

#ifndef GAMEGRAD_GAME_HPP_
#define GAMEGRAD_GAME_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gamegrad/dual.hpp"

namespace gamegrad {

// Sizes (d_1, ..., d_n) of each player's parameter block inside the flat
// parameter vector.
class PlayerPartition {
 public:
  explicit PlayerPartition(std::vector<std::size_t> sizes);

  // One parameter per player.
  static PlayerPartition uniform(std::size_t players, std::size_t size = 1);

  std::size_t players() const { return sizes_.size(); }
  std::size_t dim() const { return offsets_.back(); }
  std::size_t size(std::size_t player) const { return sizes_.at(player); }
  std::size_t offset(std::size_t player) const { return offsets_.at(player); }
  std::size_t owner(std::size_t coordinate) const;
  const std::vector<std::size_t>& sizes() const { return sizes_; }

  bool operator==(const PlayerPartition&) const = default;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
};

// An n-player differentiable game. Losses are written once as a generic
// callable
//
//   template <class S> S operator()(std::size_t player, std::span<const S> theta)
//
// and instantiated for Dual1 and Dual2, which is what makes exact first and
// second derivatives available for arbitrary games. A generic lambda
// `[](std::size_t i, auto theta) { ... }` satisfies this.
class Game {
 public:
  template <class Losses>
  Game(std::string name, PlayerPartition partition, Losses losses)
      : name_(std::move(name)),
        partition_(std::move(partition)),
        impl_(std::make_shared<Model<Losses>>(std::move(losses))) {}

  const std::string& name() const { return name_; }
  const PlayerPartition& partition() const { return partition_; }
  std::size_t players() const { return partition_.players(); }
  std::size_t dim() const { return partition_.dim(); }

  Dual1 loss(std::size_t player, std::span<const Dual1> theta) const {
    return impl_->loss(player, theta);
  }
  Dual2 loss(std::size_t player, std::span<const Dual2> theta) const {
    return impl_->loss(player, theta);
  }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual Dual1 loss(std::size_t, std::span<const Dual1>) const = 0;
    virtual Dual2 loss(std::size_t, std::span<const Dual2>) const = 0;
  };

  template <class Losses>
  struct Model final : Concept {
    explicit Model(Losses l) : losses(std::move(l)) {}
    Dual1 loss(std::size_t i, std::span<const Dual1> t) const override {
      return losses(i, t);
    }
    Dual2 loss(std::size_t i, std::span<const Dual2> t) const override {
      return losses(i, t);
    }
    Losses losses;
  };

  std::string name_;
  PlayerPartition partition_;
  std::shared_ptr<const Concept> impl_;
};

struct PointLosses {
  Eigen::VectorXd values;
};

// Everything the update rules need at one point, from a single pass of
// nested forward-mode differentiation per player.
struct GameDerivatives {
  Eigen::VectorXd losses;         // L^i(theta), length n
  Eigen::VectorXd xi;             // simultaneous gradient, length d
  Eigen::MatrixXd hessian;        // game Hessian H = grad(xi), d x d
  Eigen::MatrixXd h_d;            // diagonal blocks of H
  Eigen::MatrixXd h_o;            // off-diagonal blocks of H
  Eigen::MatrixXd loss_jacobian;  // d x n, column i = full gradient of L^i
  Eigen::VectorXd chi;            // shaping term diag(H_o^T grad L)
};

struct BlockSplit {
  Eigen::MatrixXd diagonal;
  Eigen::MatrixXd off_diagonal;
};

// Splits a d x d matrix into its partition-diagonal and off-diagonal blocks;
// the two parts sum to the input exactly.
BlockSplit split_blocks(const Eigen::MatrixXd& m, const PlayerPartition& partition);

// Block i of chi as the (i, i) block of the product H_o^T * grad L.
Eigen::VectorXd chi_matrix_form(const Eigen::MatrixXd& h_o,
                                const Eigen::MatrixXd& loss_jacobian,
                                const PlayerPartition& partition);

// Block i of chi as sum_{j != i} (grad_{ji} L^j)^T grad_j L^i.
Eigen::VectorXd chi_per_player(const Eigen::MatrixXd& hessian,
                               const Eigen::MatrixXd& loss_jacobian,
                               const PlayerPartition& partition);

PointLosses evaluate_losses(const Game& game, const Eigen::VectorXd& theta);
Eigen::VectorXd simultaneous_gradient(const Game& game, const Eigen::VectorXd& theta);
GameDerivatives game_hessian(const Game& game, const Eigen::VectorXd& theta);
Eigen::MatrixXd loss_jacobian(const Game& game, const Eigen::VectorXd& theta);
Eigen::VectorXd chi(const Game& game, const Eigen::VectorXd& theta);

// Full derivative bundle; game_hessian returns the same thing.
GameDerivatives derivatives(const Game& game, const Eigen::VectorXd& theta);

}  // namespace gamegrad

#endif  // GAMEGRAD_GAME_HPP_
