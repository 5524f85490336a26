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

#include "gamegrad/dual.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

namespace gamegrad {
namespace {

TEST(DualTest, ConstantArithmeticMatchesDoublesBitForBit) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = u(rng), y = u(rng);
    const Dual1 a(x), b(y);
    EXPECT_EQ((a + b).value(), x + y);
    EXPECT_EQ((a - b).value(), x - y);
    EXPECT_EQ((a * b).value(), x * y);
    EXPECT_EQ((a / b).value(), x / y);
    EXPECT_EQ(exp(a).value(), std::exp(x));
    EXPECT_EQ(log(Dual1(std::abs(x) + 0.1)).value(), std::log(std::abs(x) + 0.1));
    EXPECT_EQ(sigmoid(a).value(), sigmoid(x));
    EXPECT_EQ(pow(Dual1(std::abs(x) + 0.1), y).value(), std::pow(std::abs(x) + 0.1, y));
    EXPECT_TRUE((a * b + a / b).is_constant());
    // Nested constants reduce the same way.
    EXPECT_EQ(primal(Dual2(x) * Dual2(y) - Dual2(y)), x * y - y);
  }
}

TEST(DualTest, ProductAndQuotientRules) {
  const Dual1 x = Dual1::variable(3.0, 0, 2);
  const Dual1 y = Dual1::variable(2.0, 1, 2);
  const Dual1 f = x * y / (x + y);
  // d/dx [xy/(x+y)] = y^2/(x+y)^2
  EXPECT_NEAR(f.derivative(0), 4.0 / 25.0, 1e-15);
  EXPECT_NEAR(f.derivative(1), 9.0 / 25.0, 1e-15);
}

TEST(DualTest, ChainRuleThroughPrimitives) {
  const double x0 = 0.7;
  const Dual1 x = Dual1::variable(x0, 0, 1);
  EXPECT_NEAR(exp(log(x)).derivative(0), 1.0, 1e-15);
  EXPECT_NEAR(pow(x, 3.0).derivative(0), 3.0 * x0 * x0, 1e-15);
  EXPECT_NEAR(pow(x, x).derivative(0), std::pow(x0, x0) * (std::log(x0) + 1.0), 1e-14);
  const double s = 1.0 / (1.0 + std::exp(-x0));
  EXPECT_NEAR(sigmoid(x).derivative(0), s * (1.0 - s), 1e-15);
  EXPECT_NEAR(exp(x * x).derivative(0), 2.0 * x0 * std::exp(x0 * x0), 1e-14);
}

TEST(DualTest, NestedDualGivesSecondDerivatives) {
  // f(x) = sigmoid(x): f'' = s(1-s)(1-2s).
  const double x0 = 0.3;
  const Dual2 x = Dual2::variable(Dual1::variable(x0, 0, 1), 0, 1);
  const Dual2 f = sigmoid(x);
  const double s = 1.0 / (1.0 + std::exp(-x0));
  EXPECT_NEAR(f.derivative(0).derivative(0), s * (1 - s) * (1 - 2 * s), 1e-15);
  EXPECT_NEAR(f.value().derivative(0), s * (1 - s), 1e-15);
}

TEST(DualTest, SigmoidIsStableForLargeArguments) {
  EXPECT_EQ(sigmoid(-800.0), 0.0);
  EXPECT_EQ(sigmoid(800.0), 1.0);
  const Dual1 x = Dual1::variable(40.0, 0, 1);
  EXPECT_GT(sigmoid(x).derivative(0), 0.0);
  EXPECT_NEAR(sigmoid(-x).value(), std::exp(-40.0), 1e-30);
}

TEST(DualTest, DomainErrorsNameThePrimitive) {
  const Dual1 zero = Dual1::variable(0.0, 0, 1);
  try {
    (void)log(zero);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("log"), std::string::npos);
  }
  try {
    (void)(Dual1(1.0) / zero);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("division"), std::string::npos);
  }
  EXPECT_THROW((void)pow(Dual1(-1.0), 0.5), EvaluationError);
  EXPECT_NO_THROW((void)pow(Dual1(-2.0), 2.0));
  EXPECT_THROW((void)log(-1.0), EvaluationError);
}

}  // namespace
}  // namespace gamegrad
