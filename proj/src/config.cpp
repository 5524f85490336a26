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

#include "gamegrad/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "gamegrad/errors.hpp"

namespace gamegrad {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(what + ": '" + text + "' is not a number");
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(what + ": '" + text + "' is not a non-negative integer");
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(what + ": '" + text + "' is not a boolean");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_real(item, what));
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(text)) out.push_back(parse_unsigned(item, what));
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

std::size_t ExperimentConfig::step_count() const {
  if (steps) return *steps;
  return game == "ipd" ? 200 : 500;
}

void ExperimentConfig::validate() const {
  optimizer.validate();
  if (step_count() < 1) throw ConfigError("steps must be >= 1");
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (record_every < 1) throw ConfigError("record_every must be >= 1");
  if (!(init.stddev >= 0.0)) throw ConfigError("init_std must be >= 0");
  if (game == "ipd") ipd.validate();
  if (game == "quadratic") {
    if (matrix.size() == 0) throw ConfigError("game quadratic needs a matrix file");
    if (partition.empty()) throw ConfigError("game quadratic needs a partition");
  }
}

KeyValues parse_key_values(std::istream& in, const std::string& source) {
  KeyValues kv;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
    }
    kv[key] = trim(body.substr(eq + 1));
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_key_values(in, path);
}

ExperimentConfig config_from_key_values(const KeyValues& kv) {
  ExperimentConfig cfg;
  std::string matrix_path;
  for (const auto& [key, value] : kv) {
    if (key == "game") {
      cfg.game = value;
    } else if (key == "optimizer") {
      cfg.optimizer.method = parse_method(value);
    } else if (key == "alpha") {
      cfg.optimizer.alpha = parse_real(value, key);
    } else if (key == "a") {
      cfg.optimizer.a = parse_real(value, key);
    } else if (key == "b") {
      cfg.optimizer.b = parse_real(value, key);
    } else if (key == "steps") {
      cfg.steps = parse_unsigned(value, key);
    } else if (key == "runs") {
      cfg.runs = parse_unsigned(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_unsigned(value, key);
    } else if (key == "init_mean") {
      cfg.init.mean = parse_real_list(value, key);
    } else if (key == "init_std") {
      cfg.init.stddev = parse_real(value, key);
    } else if (key == "out") {
      cfg.output_path = value;
    } else if (key == "format") {
      if (value == "csv") {
        cfg.format = OutputFormat::kCsv;
      } else if (value == "json") {
        cfg.format = OutputFormat::kJson;
      } else {
        throw ConfigError("format: expected csv or json, got '" + value + "'");
      }
    } else if (key == "record_every") {
      cfg.record_every = parse_unsigned(value, key);
    } else if (key == "threads") {
      cfg.threads = parse_unsigned(value, key);
    } else if (key == "gamma") {
      cfg.ipd.gamma = parse_real(value, key);
    } else if (key == "ipd_normalize") {
      cfg.ipd.normalize = parse_bool(value, key);
    } else if (key == "ipd_loss_table") {
      const auto t = parse_real_list(value, key);
      if (t.size() != 8) throw ConfigError("ipd_loss_table: expected 8 values");
      for (std::size_t k = 0; k < 8; ++k) cfg.ipd.loss_table[k / 4][k % 4] = t[k];
    } else if (key == "matrix") {
      matrix_path = value;
    } else if (key == "partition") {
      cfg.partition = parse_size_list(value, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (!matrix_path.empty()) cfg.matrix = read_matrix_file(matrix_path);
  cfg.validate();
  return cfg;
}

Eigen::MatrixXd read_matrix(std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      line = trim(strip_comment(line));
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw ConfigError(source + ": missing 'rows cols' header");
  std::istringstream header(line);
  long long rows = 0, cols = 0;
  std::string extra;
  if (!(header >> rows >> cols) || (header >> extra) || rows <= 0 || cols <= 0) {
    throw ConfigError(where() + "expected header 'rows cols' with positive sizes");
  }
  Eigen::MatrixXd m(rows, cols);
  for (long long r = 0; r < rows; ++r) {
    if (!next_line()) {
      throw ConfigError(source + ": expected " + std::to_string(rows) + " rows, found " +
                        std::to_string(r));
    }
    std::istringstream row(line);
    std::string token;
    long long c = 0;
    while (row >> token) {
      if (c >= cols) throw ConfigError(where() + "too many entries (expected " +
                                       std::to_string(cols) + ")");
      m(r, c++) = parse_real(token, where() + "entry");
    }
    if (c != cols) {
      throw ConfigError(where() + "expected " + std::to_string(cols) + " entries, found " +
                        std::to_string(c));
    }
  }
  if (next_line()) throw ConfigError(where() + "unexpected data after last row");
  return m;
}

Eigen::MatrixXd read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file '" + path + "'");
  return read_matrix(in, path);
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
    out << '\n';
  }
  out.precision(old);
}

}  // namespace gamegrad
