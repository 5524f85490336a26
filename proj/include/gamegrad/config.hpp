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

#ifndef GAMEGRAD_CONFIG_HPP_
#define GAMEGRAD_CONFIG_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gamegrad/games.hpp"
#include "gamegrad/optimizers.hpp"

namespace gamegrad {

enum class OutputFormat { kCsv, kJson };

// theta_0 ~ N(mean, stddev^2 I). An empty mean is the origin; a single entry
// is broadcast to every coordinate.
struct InitDistribution {
  std::vector<double> mean;
  double stddev = 1.0;
};

struct ExperimentConfig {
  std::string game = "tandem";
  IpdSpec ipd{.normalize = false};  // training objective for game = ipd
  Eigen::MatrixXd matrix;           // game = quadratic
  std::vector<std::size_t> partition;
  OptimizerConfig optimizer;
  std::optional<std::size_t> steps;  // default: 200 for ipd, 500 otherwise
  std::size_t runs = 300;
  std::uint64_t seed = 0;
  InitDistribution init;
  std::string output_path;  // empty: no file
  OutputFormat format = OutputFormat::kCsv;
  std::size_t record_every = 1;
  std::size_t threads = 0;  // 0: OpenMP default

  std::size_t step_count() const;
  void validate() const;
};

// Flat "key = value" text: one pair per line, '#' starts a comment, blank
// lines ignored. Duplicate keys keep the last value.
using KeyValues = std::map<std::string, std::string>;

// Throws ConfigError naming the line on malformed input.
KeyValues parse_key_values(std::istream& in, const std::string& source = "<config>");
KeyValues read_key_values(const std::string& path);

// Builds a config from key-values on top of defaults. Recognized keys:
// game, optimizer, alpha, a, b, steps, runs, seed, init_mean, init_std, out,
// format, record_every, threads, gamma, ipd_normalize, ipd_loss_table,
// matrix, partition. Unknown keys are rejected.
ExperimentConfig config_from_key_values(const KeyValues& kv);

// Plain-text matrix: a "rows cols" header line, then one whitespace-separated
// row per line. '#' comments and blank lines are ignored.
Eigen::MatrixXd read_matrix(std::istream& in, const std::string& source = "<matrix>");
Eigen::MatrixXd read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Eigen::MatrixXd& m);

std::vector<double> parse_real_list(const std::string& text, const std::string& what);
std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& what);

}  // namespace gamegrad

#endif  // GAMEGRAD_CONFIG_HPP_
