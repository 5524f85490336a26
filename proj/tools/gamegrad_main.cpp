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

// Command-line front end: run experiments, classify points, scan spectra.
//
//   gamegrad run --config FILE [--game G --optimizer O --alpha A ...]
//   gamegrad classify --game G --theta v1,v2,...
//   gamegrad spectrum --matrix PATH --partition d1,d2,... --alphas a1,a2,...
//
// Exit codes: 0 success, 1 configuration or input error, 2 numerical failure.

#include <complex>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gamegrad/config.hpp"
#include "gamegrad/errors.hpp"
#include "gamegrad/experiment.hpp"
#include "gamegrad/games.hpp"
#include "gamegrad/spectral.hpp"

namespace {

using namespace gamegrad;

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string complex_str(std::complex<double> z) {
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag())) + "i";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct RunOptions {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

int run_command(const RunOptions& opts) {
  KeyValues kv;
  if (!opts.config_path.empty()) {
    kv = read_key_values(opts.config_path);
    // A matrix named in a config file is relative to that file.
    if (auto it = kv.find("matrix"); it != kv.end() && std::filesystem::path(it->second).is_relative()) {
      it->second = (std::filesystem::path(opts.config_path).parent_path() / it->second).string();
    }
  }
  for (const auto& [key, value] : opts.overrides) kv[key] = value;
  const ExperimentConfig cfg = config_from_key_values(kv);

  const RunSummary summary = run_experiment(cfg);
  write_output(summary);

  std::cout << "game " << cfg.game << ", optimizer " << to_string(cfg.optimizer.method)
            << ", alpha " << num(cfg.optimizer.alpha) << ": " << summary.completed_runs << "/"
            << cfg.runs << " runs completed, " << cfg.step_count() << " steps each\n";
  const Eigen::VectorXd mean = summary.final_mean_losses();
  std::cout << "mean final losses:";
  for (Eigen::Index i = 0; i < mean.size(); ++i) std::cout << ' ' << num(mean[i]);
  std::cout << "\nmean final |xi|: " << num(summary.xi_norm.mean.back()) << "\n";
  if (summary.p) std::cout << "mean final p: " << num(summary.p->mean.back()) << "\n";
  if (summary.sos_steps_checked > 0) {
    std::cout << "SOS alignment checked on " << summary.sos_steps_checked
              << " steps, min margin " << num(summary.min_alignment_margin) << "\n";
  }
  if (!cfg.output_path.empty()) std::cout << "wrote " << cfg.output_path << "\n";
  for (const auto& r : summary.runs) {
    if (!r.ok) std::cerr << "failed: " << r.error << "\n";
  }
  return summary.failed_runs > 0 ? kNumericalError : kOk;
}

int classify_command(const std::string& game_name, const std::string& theta_text,
                     double tol) {
  const Game game = game_by_name(game_name);
  const auto values = parse_real_list(theta_text, "theta");
  if (values.size() != game.dim()) {
    throw ConfigError("theta: game " + game_name + " has " + std::to_string(game.dim()) +
                      " parameters, got " + std::to_string(values.size()));
  }
  const Eigen::VectorXd theta = Eigen::Map<const Eigen::VectorXd>(
      values.data(), static_cast<Eigen::Index>(values.size()));
  const FixedPointReport r = classify_fixed_point(game, theta, tol);

  std::cout << "game: " << game_name << "\n";
  std::cout << "|xi|: " << num(r.xi_norm) << "\n";
  std::cout << "fixed point: " << yes_no(r.is_fixed) << "\n";
  std::cout << "stable (H >= 0): " << yes_no(r.stable) << "\n";
  std::cout << "unstable (H < 0): " << yes_no(r.unstable) << "\n";
  std::cout << "strict saddle: " << yes_no(r.strict_saddle) << "\n";
  std::cout << "invertible: " << yes_no(r.invertible) << " (sigma_min " << num(r.sigma_min)
            << ")\n";
  std::cout << "symmetric part eigenvalues in [" << num(r.symmetric_part.min) << ", "
            << num(r.symmetric_part.max) << "]\n";
  std::cout << "eigenvalues of H:";
  for (const auto& z : r.hessian_spectrum.eigenvalues) std::cout << "  " << complex_str(z);
  std::cout << "\n";
  std::string verdict;
  if (!r.is_fixed) {
    verdict = "not a fixed point";
  } else if (r.strict_saddle) {
    verdict = r.unstable ? "unstable fixed point (strict saddle)" : "strict saddle";
  } else if (r.stable) {
    verdict = r.invertible ? "stable fixed point" : "stable fixed point, degenerate (singular H)";
  } else {
    verdict = "fixed point, neither stable nor a strict saddle";
  }
  std::cout << "classification: " << verdict << "\n";
  return kOk;
}

int spectrum_command(const std::string& matrix_path, const std::string& partition_text,
                     const std::string& alphas_text, const std::string& json_path) {
  const Eigen::MatrixXd h = read_matrix_file(matrix_path);
  if (h.rows() != h.cols()) throw ConfigError(matrix_path + ": matrix is not square");
  const PlayerPartition partition(parse_size_list(partition_text, "partition"));
  if (partition.dim() != static_cast<std::size_t>(h.rows())) {
    throw ConfigError("partition sums to " + std::to_string(partition.dim()) +
                      " but the matrix is " + std::to_string(h.rows()) + "x" +
                      std::to_string(h.cols()));
  }
  const double sigma_min = smallest_singular_value(h);
  if (!(sigma_min > 1e-8 * std::max(1.0, h.norm()))) {
    throw ConfigError(matrix_path + ": matrix is not invertible (sigma_min " + num(sigma_min) +
                      ")");
  }
  const auto alphas = parse_real_list(alphas_text, "alphas");
  const StabilityScan scan = lookahead_stability_scan(h, partition, alphas);
  const Spectrum h_spec = eigenvalues(h);

  nlohmann::json j;
  j["matrix"] = matrix_path;
  j["partition"] = partition.sizes();
  j["sigma_min"] = sigma_min;
  std::cout << "H: " << h.rows() << "x" << h.cols() << ", sigma_min " << num(sigma_min)
            << "\neigenvalues of H:";
  for (const auto& z : h_spec.eigenvalues) std::cout << "  " << complex_str(z);
  std::cout << "\n";

  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : scan.entries) {
    std::cout << "alpha " << num(e.alpha) << ": positive stable: " << yes_no(e.positive_stable)
              << "; symmetric part lambda_min " << (e.symmetric_min < 0 ? "< 0" : ">= 0")
              << " (" << num(e.symmetric_min) << ")";
    nlohmann::json je = {{"alpha", e.alpha},
                         {"positive_stable", e.positive_stable},
                         {"symmetric_min", e.symmetric_min}};
    std::vector<std::array<double, 2>> ev;
    for (const auto& z : e.spectrum.eigenvalues) ev.push_back({z.real(), z.imag()});
    je["eigenvalues"] = ev;
    if (e.positive_stable) {
      const double bound = ostrowski_alpha_bound(e.spectrum);
      std::cout << "; Ostrowski bound " << num(bound)
                << (e.alpha < bound ? " (alpha inside)" : " (alpha outside)");
      je["ostrowski_bound"] = bound;
    }
    std::cout << "\n  eigenvalues of (I - alpha H_o) H:";
    for (const auto& z : e.spectrum.eigenvalues) std::cout << "  " << complex_str(z);
    std::cout << "\n";
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  if (scan.largest_stable_alpha) {
    std::cout << "largest grid alpha with positive stability up to it: "
              << num(*scan.largest_stable_alpha) << "\n";
    j["largest_stable_alpha"] = *scan.largest_stable_alpha;
  } else {
    std::cout << "no grid alpha is positive stable\n";
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw ConfigError("cannot open '" + json_path + "'");
    out << j.dump(2) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning dynamics in differentiable games"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run a seeded multi-run experiment");
  run->add_option("--config", run_opts.config_path, "Key-value config file");
  // Flags map one-to-one onto config keys and override the file.
  const std::vector<std::pair<std::string, std::string>> run_flags = {
      {"--game", "game"},          {"--optimizer", "optimizer"},
      {"--alpha", "alpha"},        {"--a", "a"},
      {"--b", "b"},                {"--steps", "steps"},
      {"--runs", "runs"},          {"--seed", "seed"},
      {"--out", "out"},            {"--format", "format"},
      {"--init-mean", "init_mean"}, {"--init-std", "init_std"},
      {"--record-every", "record_every"}, {"--gamma", "gamma"},
      {"--threads", "threads"},
  };
  std::vector<std::string> flag_values(run_flags.size());
  std::vector<CLI::Option*> flag_opts;
  for (std::size_t k = 0; k < run_flags.size(); ++k) {
    flag_opts.push_back(run->add_option(run_flags[k].first, flag_values[k],
                                        "Override config key '" + run_flags[k].second + "'"));
  }

  std::string classify_game, classify_theta;
  double classify_tol = 1e-8;
  auto* classify = app.add_subcommand("classify", "Classify a point of a game");
  classify->add_option("--game", classify_game, "Game name")->required();
  classify->add_option("--theta", classify_theta, "Comma-separated parameters")->required();
  classify->add_option("--tol", classify_tol, "Classification tolerance");

  std::string matrix_path, partition_text, alphas_text, json_path;
  auto* spectrum = app.add_subcommand("spectrum", "LookAhead stability scan of a Hessian");
  spectrum->add_option("--matrix", matrix_path, "Matrix file")->required();
  spectrum->add_option("--partition", partition_text, "Player sizes d1,d2,...")->required();
  spectrum->add_option("--alphas", alphas_text, "Learning rates a1,a2,...")->required();
  spectrum->add_option("--json", json_path, "Also write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) {
      for (std::size_t k = 0; k < run_flags.size(); ++k) {
        if (flag_opts[k]->count() > 0) {
          run_opts.overrides.emplace_back(run_flags[k].second, flag_values[k]);
        }
      }
      return run_command(run_opts);
    }
    if (*classify) return classify_command(classify_game, classify_theta, classify_tol);
    if (*spectrum) return spectrum_command(matrix_path, partition_text, alphas_text, json_path);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
  return kOk;
}
