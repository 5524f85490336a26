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

// Seeded multi-run experiments. Runs are independent trajectories, each drawn
// from its own RNG substream, so the parallel runner and the serial reference
// produce bit-identical summaries for any thread count.

#ifndef GAMEGRAD_EXPERIMENT_HPP_
#define GAMEGRAD_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gamegrad/config.hpp"
#include "gamegrad/game.hpp"

namespace gamegrad {

// Slack allowed in the online SOS alignment check, scaled by max(1, |xi_0|^2):
// when p is set by the alignment ratio the exact margin is zero and rounding
// grows with the gradient scale.
inline constexpr double kAlignmentSlack = 1e-12;

std::uint64_t splitmix64(std::uint64_t x);
// Seed of run `run`'s RNG substream.
std::uint64_t run_seed(std::uint64_t seed, std::size_t run);

// Game actually optimized, and game whose losses are reported. They differ
// only for the IPD, which is trained on the raw discounted value and reported
// on the (1 - gamma)-normalized scale.
struct GameSetup {
  Game train;
  std::optional<Game> report;  // empty: report the training losses
};
GameSetup make_game_setup(const ExperimentConfig& cfg);

Eigen::VectorXd draw_initial_point(const InitDistribution& init, std::size_t dim,
                                   std::mt19937_64& rng);

struct RunResult {
  std::size_t run = 0;
  bool ok = true;
  std::string error;  // diagnostic when !ok
  Eigen::VectorXd theta_initial;
  Eigen::VectorXd theta_final;
  Eigen::VectorXd final_losses;  // reported scale
  double final_xi_norm = 0.0;
  std::size_t sos_steps = 0;
  double min_alignment_margin = 0.0;  // over SOS steps; +inf if none
};

struct SeriesStats {
  std::vector<double> mean;
  std::vector<double> stddev;
};

struct RunSummary {
  ExperimentConfig config;
  std::vector<std::size_t> recorded_steps;
  std::vector<SeriesStats> loss;  // per player, over completed runs
  SeriesStats xi_norm;
  std::optional<SeriesStats> p;  // absent for NL
  std::vector<RunResult> runs;   // ordered by run index
  std::size_t completed_runs = 0;
  std::size_t failed_runs = 0;
  std::size_t sos_steps_checked = 0;
  double min_alignment_margin = 0.0;

  // Mean over completed runs of each player's final reported loss.
  Eigen::VectorXd final_mean_losses() const;
};

// OpenMP over runs. Thread count: cfg.threads if nonzero, capped by the
// GAMEGRAD_THREADS environment variable when set.
RunSummary run_experiment(const ExperimentConfig& cfg);

// Single-threaded reference with identical results.
RunSummary run_experiment_serial(const ExperimentConfig& cfg);

std::size_t resolve_thread_count(std::size_t requested);

// First line is a '#' comment documenting the columns; second is the header.
void write_csv(std::ostream& out, const RunSummary& summary);
void write_json(std::ostream& out, const RunSummary& summary);
// Writes to summary.config.output_path in summary.config.format.
void write_output(const RunSummary& summary);

}  // namespace gamegrad

#endif  // GAMEGRAD_EXPERIMENT_HPP_
