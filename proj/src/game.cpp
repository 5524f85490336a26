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

#include "gamegrad/game.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gamegrad/diff.hpp"
#include "gamegrad/errors.hpp"

namespace gamegrad {

PlayerPartition::PlayerPartition(std::vector<std::size_t> sizes)
    : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw ConfigError("partition: need at least one player");
  offsets_.reserve(sizes_.size() + 1);
  offsets_.push_back(0);
  for (std::size_t s : sizes_) {
    if (s == 0) throw ConfigError("partition: every player needs >= 1 parameter");
    offsets_.push_back(offsets_.back() + s);
  }
}

PlayerPartition PlayerPartition::uniform(std::size_t players, std::size_t size) {
  return PlayerPartition(std::vector<std::size_t>(players, size));
}

std::size_t PlayerPartition::owner(std::size_t coordinate) const {
  if (coordinate >= dim()) throw std::out_of_range("partition: coordinate out of range");
  std::size_t i = 0;
  while (offsets_[i + 1] <= coordinate) ++i;
  return i;
}

namespace {

void check_dim(const Game& game, const Eigen::VectorXd& theta) {
  if (static_cast<std::size_t>(theta.size()) != game.dim()) {
    throw std::invalid_argument("game '" + game.name() + "': expected " +
                                std::to_string(game.dim()) + " parameters, got " +
                                std::to_string(theta.size()));
  }
}

std::string describe(const Eigen::VectorXd& theta) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (Eigen::Index k = 0; k < theta.size(); ++k) os << (k ? ", " : "") << theta[k];
  os << ")";
  return os.str();
}

void require_finite(const Game& game, const Eigen::VectorXd& theta,
                    const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw EvaluationError("game '" + game.name() + "': non-finite " + what +
                          " at theta = " + describe(theta));
  }
}

// Evaluates a generic loss under a thrown EvaluationError, adding context.
template <class S>
S evaluate_loss(const Game& game, std::size_t player, const std::vector<S>& x,
                const Eigen::VectorXd& theta) {
  try {
    return game.loss(player, std::span<const S>(x));
  } catch (const EvaluationError& e) {
    throw EvaluationError("game '" + game.name() + "', loss " + std::to_string(player) +
                          " at theta = " + describe(theta) + ": " + e.what());
  }
}

}  // namespace

BlockSplit split_blocks(const Eigen::MatrixXd& m, const PlayerPartition& partition) {
  const auto d = static_cast<Eigen::Index>(partition.dim());
  if (m.rows() != d || m.cols() != d) {
    throw std::invalid_argument("split_blocks: matrix does not match partition");
  }
  BlockSplit out{Eigen::MatrixXd::Zero(d, d), m};
  for (std::size_t i = 0; i < partition.players(); ++i) {
    const auto o = static_cast<Eigen::Index>(partition.offset(i));
    const auto s = static_cast<Eigen::Index>(partition.size(i));
    out.diagonal.block(o, o, s, s) = m.block(o, o, s, s);
    out.off_diagonal.block(o, o, s, s).setZero();
  }
  return out;
}

Eigen::VectorXd chi_matrix_form(const Eigen::MatrixXd& h_o,
                                const Eigen::MatrixXd& loss_jacobian,
                                const PlayerPartition& partition) {
  const Eigen::MatrixXd product = h_o.transpose() * loss_jacobian;
  Eigen::VectorXd out(partition.dim());
  for (std::size_t i = 0; i < partition.players(); ++i) {
    const auto o = static_cast<Eigen::Index>(partition.offset(i));
    const auto s = static_cast<Eigen::Index>(partition.size(i));
    out.segment(o, s) = product.block(o, static_cast<Eigen::Index>(i), s, 1);
  }
  return out;
}

Eigen::VectorXd chi_per_player(const Eigen::MatrixXd& hessian,
                               const Eigen::MatrixXd& loss_jacobian,
                               const PlayerPartition& partition) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(partition.dim());
  for (std::size_t i = 0; i < partition.players(); ++i) {
    const auto oi = static_cast<Eigen::Index>(partition.offset(i));
    const auto si = static_cast<Eigen::Index>(partition.size(i));
    for (std::size_t j = 0; j < partition.players(); ++j) {
      if (j == i) continue;
      const auto oj = static_cast<Eigen::Index>(partition.offset(j));
      const auto sj = static_cast<Eigen::Index>(partition.size(j));
      // grad_{ji} L^j is the (j, i) block of H; grad_j L^i is rows of player j
      // in column i of grad L.
      out.segment(oi, si) += hessian.block(oj, oi, sj, si).transpose() *
                             loss_jacobian.block(oj, static_cast<Eigen::Index>(i), sj, 1);
    }
  }
  return out;
}

PointLosses evaluate_losses(const Game& game, const Eigen::VectorXd& theta) {
  check_dim(game, theta);
  const auto x = detail::constants(theta);
  PointLosses out{Eigen::VectorXd(game.players())};
  for (std::size_t i = 0; i < game.players(); ++i) {
    out.values[i] = primal(evaluate_loss(game, i, x, theta));
  }
  require_finite(game, theta, out.values, "loss");
  return out;
}

Eigen::VectorXd simultaneous_gradient(const Game& game, const Eigen::VectorXd& theta) {
  check_dim(game, theta);
  const PlayerPartition& part = game.partition();
  Eigen::VectorXd xi(game.dim());
  for (std::size_t i = 0; i < game.players(); ++i) {
    const std::size_t o = part.offset(i), s = part.size(i);
    std::vector<Dual1> x;
    x.reserve(game.dim());
    for (std::size_t k = 0; k < game.dim(); ++k) {
      x.push_back(k >= o && k < o + s ? Dual1::variable(theta[k], k - o, s)
                                      : Dual1(theta[k]));
    }
    const Dual1 y = evaluate_loss(game, i, x, theta);
    for (std::size_t m = 0; m < s; ++m) xi[o + m] = y.derivative(m);
  }
  require_finite(game, theta, xi, "simultaneous gradient");
  return xi;
}

Eigen::MatrixXd loss_jacobian(const Game& game, const Eigen::VectorXd& theta) {
  check_dim(game, theta);
  const std::size_t d = game.dim();
  std::vector<Dual1> x;
  x.reserve(d);
  for (std::size_t k = 0; k < d; ++k) x.push_back(Dual1::variable(theta[k], k, d));
  Eigen::MatrixXd jac(d, game.players());
  for (std::size_t i = 0; i < game.players(); ++i) {
    const Dual1 y = evaluate_loss(game, i, x, theta);
    for (std::size_t k = 0; k < d; ++k) jac(k, i) = y.derivative(k);
  }
  require_finite(game, theta, jac, "loss gradient");
  return jac;
}

GameDerivatives derivatives(const Game& game, const Eigen::VectorXd& theta) {
  check_dim(game, theta);
  const PlayerPartition& part = game.partition();
  const std::size_t d = game.dim(), n = game.players();

  GameDerivatives out;
  out.losses.resize(n);
  out.xi.resize(d);
  out.hessian.resize(d, d);
  out.loss_jacobian.resize(d, n);

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t o = part.offset(i), s = part.size(i);
    // Inner tangent over player i's own block, outer tangent over all of
    // theta: the inner derivative is block i of xi and the outer derivative of
    // that is row block i of H.
    const auto x = detail::seed_second_order(theta, o, s);
    const Dual2 y = evaluate_loss(game, i, x, theta);
    out.losses[i] = primal(y);
    for (std::size_t m = 0; m < s; ++m) out.xi[o + m] = y.value().derivative(m);
    for (std::size_t j = 0; j < d; ++j) {
      const Dual1 dj = y.derivative(j);
      out.loss_jacobian(j, i) = dj.value();
      for (std::size_t m = 0; m < s; ++m) out.hessian(o + m, j) = dj.derivative(m);
    }
    for (std::size_t m = 0; m < s; ++m) {
      for (std::size_t k = m + 1; k < s; ++k) {
        const double v = 0.5 * (out.hessian(o + m, o + k) + out.hessian(o + k, o + m));
        out.hessian(o + m, o + k) = v;
        out.hessian(o + k, o + m) = v;
      }
    }
  }
  require_finite(game, theta, out.losses, "loss");
  require_finite(game, theta, out.xi, "simultaneous gradient");
  require_finite(game, theta, out.hessian, "game Hessian");
  require_finite(game, theta, out.loss_jacobian, "loss gradient");

  BlockSplit split = split_blocks(out.hessian, part);
  out.h_d = std::move(split.diagonal);
  out.h_o = std::move(split.off_diagonal);
  out.chi = chi_per_player(out.hessian, out.loss_jacobian, part);
  return out;
}

GameDerivatives game_hessian(const Game& game, const Eigen::VectorXd& theta) {
  return derivatives(game, theta);
}

Eigen::VectorXd chi(const Game& game, const Eigen::VectorXd& theta) {
  return derivatives(game, theta).chi;
}

}  // namespace gamegrad
