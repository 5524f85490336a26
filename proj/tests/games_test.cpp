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

#include <random>

#include "gamegrad/errors.hpp"
#include "gamegrad/spectral.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace gamegrad {
namespace {

using testing::mat;
using testing::max_abs;
using testing::vec;

TEST(MatchingPenniesTest, Basics) {
  const Game g = matching_pennies();
  EXPECT_EQ(g.players(), 2u);
  EXPECT_EQ(simultaneous_gradient(g, vec({1, 2})), vec({2, -1}));
  EXPECT_EQ(derivatives(g, vec({-4, 9})).hessian, mat({{0, 1}, {-1, 0}}));
  EXPECT_EQ(evaluate_losses(g, vec({0, 0})).values, vec({0, 0}));
}

TEST(HiddenSaddleTest, Basics) {
  const Game g = hidden_saddle();
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd t = testing::random_point(2, rng);
    EXPECT_EQ(simultaneous_gradient(g, t), vec({t[1], t[0]}));
    EXPECT_EQ(derivatives(g, t).hessian, mat({{0, 1}, {1, 0}}));
  }
  EXPECT_EQ(simultaneous_gradient(g, vec({0, 0})), vec({0, 0}));
}

TEST(TandemTest, FixedLineAndLosses) {
  const Game g = tandem();
  for (double x : {-2.0, 0.0, 0.5, 1.0, 3.5}) {
    const Eigen::VectorXd t = vec({x, 1 - x});
    EXPECT_EQ(max_abs(simultaneous_gradient(g, t)), 0.0);
    const Eigen::VectorXd l = evaluate_losses(g, t).values;
    EXPECT_NEAR(l[0], 1 - 2 * x, 1e-14);
    EXPECT_NEAR(l[1], 2 * x - 1, 1e-14);
    EXPECT_NEAR(l.sum(), 0.0, 1e-14);
  }
}

TEST(TandemTest, HessianIsPsdAndSingular) {
  const GameDerivatives d = derivatives(tandem(), vec({0.2, 0.1}));
  EXPECT_EQ(d.hessian, mat({{2, 2}, {2, 2}}));
  const SymmetricRange r = symmetric_part_range(d.hessian);
  EXPECT_NEAR(r.min, 0.0, 1e-14);
  EXPECT_NEAR(r.max, 4.0, 1e-14);
}

TEST(TandemTest, MatchesClosedFormsAtRandomPoints) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd t = testing::random_point(2, rng, 3.0);
    const double s = t[0] + t[1];
    const GameDerivatives d = derivatives(tandem(), t);
    EXPECT_LT(max_abs(d.xi - 2 * (s - 1) * vec({1, 1})), 1e-10);
    EXPECT_LT(max_abs(d.hessian - mat({{2, 2}, {2, 2}})), 1e-10);
    EXPECT_LT(max_abs(d.chi - 4 * s * vec({1, 1})), 1e-10);
  }
}

TEST(LolaFixedLineTest, Values) {
  EXPECT_NEAR(lola_fixed_line(0.1), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(lola_fixed_line(1e-9), 1.0, 1e-8);
  for (double a : {0.01, 0.05, 0.1, 0.2}) EXPECT_GT(lola_fixed_line(a), 1.0);
  EXPECT_THROW((void)lola_fixed_line(0.25), std::invalid_argument);
}

TEST(QuadraticGameTest, GradientAndHessianRealizeTheMatrix) {
  std::mt19937_64 rng(3);
  const std::vector<PlayerPartition> partitions = {
      PlayerPartition({1, 1}), PlayerPartition({2, 3}), PlayerPartition({1, 2, 1}),
      PlayerPartition({3})};
  for (int trial = 0; trial < 20; ++trial) {
    const PlayerPartition& part = partitions[trial % partitions.size()];
    const auto d = static_cast<Eigen::Index>(part.dim());
    Eigen::MatrixXd m = Eigen::MatrixXd::NullaryExpr(d, d, [&] {
      return std::normal_distribution<double>(0.0, 1.0)(rng);
    });
    // Symmetrize the diagonal blocks only.
    for (std::size_t i = 0; i < part.players(); ++i) {
      const auto o = static_cast<Eigen::Index>(part.offset(i));
      const auto s = static_cast<Eigen::Index>(part.size(i));
      const Eigen::MatrixXd b = m.block(o, o, s, s);
      m.block(o, o, s, s) = 0.5 * (b + b.transpose());
    }
    const Game g = quadratic_game({m, part});
    const Eigen::VectorXd theta = testing::random_point(part.dim(), rng);
    EXPECT_LT(max_abs(simultaneous_gradient(g, theta) - m * theta), 1e-12);
    EXPECT_EQ(derivatives(g, theta).hessian, m);
  }
}

TEST(QuadraticGameTest, RejectsAsymmetricDiagonalBlocks) {
  const Eigen::MatrixXd m = mat({{1, 2, 0}, {0, 1, 5}, {1, 1, 1}});
  EXPECT_THROW((void)quadratic_game({m, PlayerPartition({2, 1})}), ConfigError);
  EXPECT_NO_THROW((void)quadratic_game({m, PlayerPartition({1, 1, 1})}));
  EXPECT_THROW((void)quadratic_game({m, PlayerPartition({1, 1})}), ConfigError);
}

TEST(AppendixDMatrixTest, Entries) {
  const Eigen::MatrixXd h = appendix_d_matrix();
  EXPECT_EQ(h(0, 0), 9);
  EXPECT_EQ(h(2, 1), 0);
  EXPECT_EQ(h.trace(), 12);
  const Game g = quadratic_game({h, PlayerPartition::uniform(4)});
  const GameDerivatives d = derivatives(g, vec({0.1, 0.2, 0.3, 0.4}));
  EXPECT_EQ(d.h_d, Eigen::Vector4d(9, 1, 1, 1).asDiagonal().toDenseMatrix());
}

TEST(GameByNameTest, KnownAndUnknown) {
  for (const char* name : {"matching_pennies", "hidden_saddle", "tandem", "ipd", "appendix_d"}) {
    EXPECT_NO_THROW((void)game_by_name(name)) << name;
  }
  EXPECT_EQ(game_by_name("appendix_d").dim(), 4u);
  EXPECT_THROW((void)game_by_name("chess"), ConfigError);
}

}  // namespace
}  // namespace gamegrad
