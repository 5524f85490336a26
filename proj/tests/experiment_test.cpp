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

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "gamegrad/errors.hpp"
#include "gamegrad/experiment.hpp"
#include "gamegrad/games.hpp"
#include "gtest/gtest.h"
#include "json.hpp"

namespace gamegrad {
namespace {

ExperimentConfig small(const std::string& game, Method m, std::size_t runs = 12,
                       std::size_t steps = 40) {
  ExperimentConfig cfg;
  cfg.game = game;
  cfg.optimizer.method = m;
  cfg.optimizer.alpha = game == "ipd" ? 1.0 : 0.1;
  cfg.runs = runs;
  cfg.steps = steps;
  cfg.seed = 99;
  return cfg;
}

std::string csv(const RunSummary& s) {
  std::ostringstream out;
  write_csv(out, s);
  return out.str();
}

std::string json_text(const RunSummary& s) {
  std::ostringstream out;
  write_json(out, s);
  return out.str();
}

TEST(ExperimentTest, RunSeedsAreDistinctAndStable) {
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_NE(run_seed(1, 0), run_seed(1, 1));
  EXPECT_NE(run_seed(1, 0), run_seed(2, 0));
  EXPECT_EQ(run_seed(7, 3), run_seed(7, 3));
}

TEST(ExperimentTest, ParallelMatchesSerialBitForBit) {
  for (const auto& [game, m] : {std::pair{"tandem", Method::kSos}, std::pair{"ipd", Method::kLola},
                                std::pair{"matching_pennies", Method::kNL}}) {
    ExperimentConfig cfg = small(game, m, 16, 25);
    const std::string reference = csv(run_experiment_serial(cfg));
    for (std::size_t threads : {1, 2, 3, 8}) {
      cfg.threads = threads;
      const RunSummary s = run_experiment(cfg);
      EXPECT_EQ(csv(s), reference) << game << " threads=" << threads;
    }
    cfg.threads = 4;
    EXPECT_EQ(json_text(run_experiment(cfg)), json_text(run_experiment_serial(cfg))) << game;
  }
}

TEST(ExperimentTest, SameSeedSameOutputDifferentSeedDifferentOutput) {
  ExperimentConfig cfg = small("tandem", Method::kLola);
  const std::string a = csv(run_experiment(cfg));
  EXPECT_EQ(a, csv(run_experiment(cfg)));
  cfg.seed = 100;
  EXPECT_NE(a, csv(run_experiment(cfg)));
}

TEST(ExperimentTest, CsvColumnContract) {
  ExperimentConfig cfg = small("tandem", Method::kSos, 3, 10);
  cfg.record_every = 4;
  const RunSummary s = run_experiment(cfg);
  std::istringstream in(csv(s));
  std::string comment, header, line;
  std::getline(in, comment);
  std::getline(in, header);
  EXPECT_EQ(comment.front(), '#');
  EXPECT_EQ(header, "step,loss1_mean,loss1_std,loss2_mean,loss2_std,xi_norm_mean,xi_norm_std,"
                    "p_mean,p_std");
  std::vector<std::string> steps;
  while (std::getline(in, line)) {
    steps.push_back(line.substr(0, line.find(',')));
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8);
  }
  EXPECT_EQ(steps, (std::vector<std::string>{"0", "4", "8", "10"}));

  const RunSummary nl = run_experiment(small("tandem", Method::kNL, 2, 3));
  std::istringstream nin(csv(nl));
  std::getline(nin, comment);
  std::getline(nin, header);
  EXPECT_EQ(header, "step,loss1_mean,loss1_std,loss2_mean,loss2_std,xi_norm_mean,xi_norm_std");
}

TEST(ExperimentTest, SummaryMatchesRecomputation) {
  const ExperimentConfig cfg = small("tandem", Method::kLookAhead, 5, 7);
  const RunSummary s = run_experiment(cfg);
  ASSERT_EQ(s.completed_runs, 5u);
  ASSERT_EQ(s.recorded_steps.back(), 7u);
  // Replay each run by hand from its recorded initial point.
  const Game g = tandem();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
  for (const RunResult& r : s.runs) {
    Eigen::VectorXd th = r.theta_initial;
    for (int k = 0; k < 7; ++k) th = step(g, th, cfg.optimizer).theta_after;
    EXPECT_EQ(th, r.theta_final);
    EXPECT_EQ(evaluate_losses(g, th).values, r.final_losses);
    mean += r.final_losses;
  }
  mean /= 5.0;
  EXPECT_NEAR(s.loss[0].mean.back(), mean[0], 1e-14);
  EXPECT_NEAR(s.loss[1].mean.back(), mean[1], 1e-14);
  EXPECT_NEAR(s.final_mean_losses()[0], mean[0], 1e-14);
}

TEST(ExperimentTest, InitialPointsFollowTheDistribution) {
  ExperimentConfig cfg = small("tandem", Method::kNL, 4000, 1);
  cfg.init.mean = {0.5, -2};
  cfg.init.stddev = 2;
  const RunSummary s = run_experiment(cfg);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(2), sq = Eigen::VectorXd::Zero(2);
  for (const RunResult& r : s.runs) {
    sum += r.theta_initial;
    sq += r.theta_initial.cwiseProduct(r.theta_initial);
  }
  const Eigen::VectorXd m = sum / 4000.0;
  const Eigen::VectorXd var = sq / 4000.0 - m.cwiseProduct(m);
  EXPECT_NEAR(m[0], 0.5, 0.15);
  EXPECT_NEAR(m[1], -2, 0.15);
  EXPECT_NEAR(std::sqrt(var[0]), 2, 0.1);
  EXPECT_NEAR(std::sqrt(var[1]), 2, 0.1);
}

TEST(ExperimentTest, FailedRunsAreReportedNotDropped) {
  // NL on the hidden saddle grows like (1 + alpha)^k and overflows.
  ExperimentConfig cfg = small("hidden_saddle", Method::kNL, 6, 1200);
  cfg.optimizer.alpha = 1.0;
  cfg.init.mean = {1.0};
  cfg.init.stddev = 0.1;
  const RunSummary s = run_experiment(cfg);
  EXPECT_EQ(s.failed_runs, 6u);
  EXPECT_EQ(s.completed_runs, 0u);
  for (const RunResult& r : s.runs) {
    EXPECT_FALSE(r.ok);
    EXPECT_NE(r.error.find("run " + std::to_string(r.run) + ", step "), std::string::npos)
        << r.error;
  }
  const auto j = nlohmann::json::parse(json_text(s));
  EXPECT_EQ(j["failed_runs"], 6);
  EXPECT_TRUE(j["runs"][0].contains("error"));
}

TEST(ExperimentTest, SosAlignmentIsCheckedOnline) {
  const RunSummary s = run_experiment(small("ipd", Method::kSos, 4, 30));
  EXPECT_EQ(s.sos_steps_checked, 4u * 30u);
  EXPECT_GE(s.min_alignment_margin, -kAlignmentSlack);
  EXPECT_EQ(s.failed_runs, 0u);
}

TEST(ExperimentTest, AlignmentSlackScalesWithGradient) {
  // SOS diverges on this game; margins set by the alignment ratio are zero up
  // to rounding of order eps |xi_0|^2, which must not abort the runs.
  ExperimentConfig cfg = small("quadratic", Method::kSos, 5, 3000);
  cfg.matrix = appendix_d_matrix();
  cfg.partition = {1, 1, 1, 1};
  cfg.optimizer.alpha = 0.05;
  const RunSummary s = run_experiment(cfg);
  EXPECT_EQ(s.failed_runs, 0u);
  EXPECT_GT(s.xi_norm.mean.back(), 1e20);
}

TEST(ExperimentTest, IpdReportsNormalizedLosses) {
  ExperimentConfig cfg = small("ipd", Method::kNL, 2, 1);
  cfg.optimizer.alpha = 1e-9;
  const RunSummary s = run_experiment(cfg);
  const Game reported = ipd();
  for (const RunResult& r : s.runs) {
    const Eigen::VectorXd expected = evaluate_losses(reported, r.theta_final).values;
    EXPECT_EQ(r.final_losses, expected);
  }
}

TEST(ExperimentTest, QuadraticGameFromConfig) {
  ExperimentConfig cfg = small("quadratic", Method::kSos, 3, 50);
  cfg.matrix = appendix_d_matrix();
  cfg.partition = {1, 1, 1, 1};
  cfg.optimizer.alpha = 0.01;
  const RunSummary s = run_experiment(cfg);
  EXPECT_EQ(s.completed_runs, 3u);
  EXPECT_EQ(s.loss.size(), 4u);
}

TEST(ExperimentTest, RejectsBadConfigs) {
  ExperimentConfig cfg = small("tandem", Method::kSos);
  cfg.init.mean = {1, 2, 3};
  EXPECT_THROW((void)run_experiment(cfg), ConfigError);
  cfg = small("chess", Method::kSos);
  EXPECT_THROW((void)run_experiment(cfg), ConfigError);
  cfg = small("tandem", Method::kSos);
  cfg.runs = 0;
  EXPECT_THROW((void)run_experiment(cfg), ConfigError);
}

TEST(ExperimentTest, ThreadCountResolution) {
  EXPECT_GE(resolve_thread_count(0), 1u);
  ::setenv("GAMEGRAD_THREADS", "2", 1);
  EXPECT_LE(resolve_thread_count(8), 2u);
  ::unsetenv("GAMEGRAD_THREADS");
}

}  // namespace
}  // namespace gamegrad
