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

#include "gamegrad/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <string>

#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gamegrad/errors.hpp"
#include "gamegrad/games.hpp"
#include "gamegrad/optimizers.hpp"

namespace gamegrad {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t run_seed(std::uint64_t seed, std::size_t run) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(run)));
}

GameSetup make_game_setup(const ExperimentConfig& cfg) {
  if (cfg.game == "quadratic") {
    return {quadratic_game({cfg.matrix, PlayerPartition(cfg.partition)}), std::nullopt};
  }
  if (cfg.game == "ipd" && !cfg.ipd.normalize) {
    IpdSpec reporting = cfg.ipd;
    reporting.normalize = true;
    return {ipd(cfg.ipd), ipd(reporting)};
  }
  return {game_by_name(cfg.game, cfg.ipd), std::nullopt};
}

Eigen::VectorXd draw_initial_point(const InitDistribution& init, std::size_t dim,
                                   std::mt19937_64& rng) {
  if (init.mean.size() > 1 && init.mean.size() != dim) {
    throw ConfigError("init_mean has " + std::to_string(init.mean.size()) +
                      " entries but the game has " + std::to_string(dim) + " parameters");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd theta(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double mean = init.mean.empty() ? 0.0
                        : init.mean.size() == 1 ? init.mean[0]
                                                : init.mean[k];
    theta[k] = mean + init.stddev * normal(rng);
  }
  return theta;
}

Eigen::VectorXd RunSummary::final_mean_losses() const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(loss.size()));
  if (completed_runs == 0) return out * std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : runs) {
    if (r.ok) out += r.final_losses;
  }
  return out / static_cast<double>(completed_runs);
}

namespace {

struct Trajectory {
  Eigen::MatrixXd losses;  // recorded step x player
  std::vector<double> xi_norm;
  std::vector<double> p;
};

struct RunOutcome {
  RunResult result;
  Trajectory trajectory;
};

std::vector<std::size_t> recorded_steps(const ExperimentConfig& cfg) {
  std::vector<std::size_t> out;
  const std::size_t steps = cfg.step_count();
  for (std::size_t k = 0; k < steps; k += cfg.record_every) out.push_back(k);
  out.push_back(steps);
  return out;
}

// Errors that would hit every run identically are raised before any run starts.
void check_setup(const ExperimentConfig& cfg, const GameSetup& setup) {
  const std::size_t n = cfg.init.mean.size();
  if (n > 1 && n != setup.train.dim()) {
    throw ConfigError("init_mean has " + std::to_string(n) + " entries but the game has " +
                      std::to_string(setup.train.dim()) + " parameters");
  }
}

std::string describe_step(std::size_t run, std::size_t k) {
  return "run " + std::to_string(run) + ", step " + std::to_string(k) + ": ";
}

RunOutcome simulate_run(const ExperimentConfig& cfg, const GameSetup& setup,
                        const std::vector<std::size_t>& recorded, std::size_t run) {
  const Game& game = setup.train;
  const std::size_t steps = cfg.step_count();
  const bool is_sos = cfg.optimizer.method == Method::kSos;

  RunOutcome out;
  RunResult& r = out.result;
  r.run = run;
  r.min_alignment_margin = std::numeric_limits<double>::infinity();
  Trajectory& traj = out.trajectory;
  traj.losses.resize(static_cast<Eigen::Index>(recorded.size()),
                     static_cast<Eigen::Index>(game.players()));

  std::mt19937_64 rng(run_seed(cfg.seed, run));
  Eigen::VectorXd theta = draw_initial_point(cfg.init, game.dim(), rng);
  r.theta_initial = theta;

  std::size_t next_record = 0;
  std::size_t k = 0;
  try {
    for (k = 0; k <= steps; ++k) {
      // At k == steps the step is only evaluated to record the final point.
      const StepRecord rec = step(game, theta, cfg.optimizer);
      Eigen::VectorXd losses =
          setup.report ? evaluate_losses(*setup.report, theta).values : rec.losses;
      if (next_record < recorded.size() && recorded[next_record] == k) {
        traj.losses.row(static_cast<Eigen::Index>(next_record)) = losses.transpose();
        traj.xi_norm.push_back(rec.xi_norm);
        traj.p.push_back(rec.p.value_or(std::numeric_limits<double>::quiet_NaN()));
        ++next_record;
      }
      if (k == steps) {
        r.final_losses = std::move(losses);
        r.final_xi_norm = rec.xi_norm;
        break;
      }
      if (is_sos) {
        const double margin = sos_alignment_margin(rec, cfg.optimizer.a);
        ++r.sos_steps;
        r.min_alignment_margin = std::min(r.min_alignment_margin, margin);
        const double slack = kAlignmentSlack * std::max(1.0, rec.lookahead.squaredNorm());
        if (margin < -slack) {
          char buf[96];
          std::snprintf(buf, sizeof buf, "%.6e (|xi_0|^2 = %.6e)", margin,
                        rec.lookahead.squaredNorm());
          throw NumericalError(std::string("SOS alignment violated, <xi_p, xi_0> - (1-a)|xi_0|^2 = ") +
                               buf);
        }
      }
      if (!rec.theta_after.allFinite()) throw NumericalError("parameters became non-finite");
      theta = rec.theta_after;
    }
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = describe_step(run, k) + e.what();
  }
  r.theta_final = theta;
  return out;
}

RunSummary summarize(const ExperimentConfig& cfg, const std::vector<std::size_t>& recorded,
                     std::vector<RunOutcome> outcomes, std::size_t players) {
  RunSummary s;
  s.config = cfg;
  s.recorded_steps = recorded;
  s.min_alignment_margin = std::numeric_limits<double>::infinity();
  const bool has_p = cfg.optimizer.method != Method::kNL;
  const std::size_t m = recorded.size();

  std::vector<const Trajectory*> done;
  for (auto& o : outcomes) {
    if (o.result.ok) {
      done.push_back(&o.trajectory);
      ++s.completed_runs;
    } else {
      ++s.failed_runs;
    }
    s.sos_steps_checked += o.result.sos_steps;
    s.min_alignment_margin = std::min(s.min_alignment_margin, o.result.min_alignment_margin);
  }

  auto stats = [&](auto&& value) {
    SeriesStats st{std::vector<double>(m), std::vector<double>(m)};
    const double n = static_cast<double>(done.size());
    for (std::size_t i = 0; i < m; ++i) {
      double sum = 0.0;
      for (const Trajectory* t : done) sum += value(*t, i);
      const double mean = sum / n;
      double sq = 0.0;
      for (const Trajectory* t : done) {
        const double dev = value(*t, i) - mean;
        sq += dev * dev;
      }
      st.mean[i] = mean;
      st.stddev[i] = std::sqrt(sq / n);
    }
    return st;
  };

  for (std::size_t pl = 0; pl < players; ++pl) {
    s.loss.push_back(stats([pl](const Trajectory& t, std::size_t i) {
      return t.losses(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(pl));
    }));
  }
  s.xi_norm = stats([](const Trajectory& t, std::size_t i) { return t.xi_norm[i]; });
  if (has_p) s.p = stats([](const Trajectory& t, std::size_t i) { return t.p[i]; });

  s.runs.reserve(outcomes.size());
  for (auto& o : outcomes) s.runs.push_back(std::move(o.result));
  return s;
}

}  // namespace

std::size_t resolve_thread_count(std::size_t requested) {
  std::size_t n = requested;
#ifdef _OPENMP
  if (n == 0) n = static_cast<std::size_t>(omp_get_max_threads());
#else
  n = 1;
#endif
  if (const char* env = std::getenv("GAMEGRAD_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return std::max<std::size_t>(n, 1);
}

RunSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const GameSetup setup = make_game_setup(cfg);
  check_setup(cfg, setup);
  const auto recorded = recorded_steps(cfg);
  std::vector<RunOutcome> outcomes(cfg.runs);
  const long long runs = static_cast<long long>(cfg.runs);
  const int threads = static_cast<int>(resolve_thread_count(cfg.threads));
  (void)threads;

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long run = 0; run < runs; ++run) {
    outcomes[static_cast<std::size_t>(run)] =
        simulate_run(cfg, setup, recorded, static_cast<std::size_t>(run));
  }
  return summarize(cfg, recorded, std::move(outcomes), setup.train.players());
}

RunSummary run_experiment_serial(const ExperimentConfig& cfg) {
  cfg.validate();
  const GameSetup setup = make_game_setup(cfg);
  check_setup(cfg, setup);
  const auto recorded = recorded_steps(cfg);
  std::vector<RunOutcome> outcomes;
  outcomes.reserve(cfg.runs);
  for (std::size_t run = 0; run < cfg.runs; ++run) {
    outcomes.push_back(simulate_run(cfg, setup, recorded, run));
  }
  return summarize(cfg, recorded, std::move(outcomes), setup.train.players());
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const RunSummary& s) {
  const auto& c = s.config;
  const std::size_t players = s.loss.size();
  out << "# gamegrad trajectory; game=" << c.game << " optimizer=" << to_string(c.optimizer.method)
      << " alpha=" << fmt(c.optimizer.alpha) << " a=" << fmt(c.optimizer.a)
      << " b=" << fmt(c.optimizer.b) << " steps=" << c.step_count() << " runs=" << c.runs
      << " completed=" << s.completed_runs << " seed=" << c.seed
      << "; columns: step, then mean and population std across completed runs of each"
         " player's loss (loss<i>_mean, loss<i>_std), |xi| (xi_norm_mean, xi_norm_std)";
  if (s.p) out << " and p (p_mean, p_std)";
  out << "\n";
  out << "step";
  for (std::size_t i = 0; i < players; ++i) {
    out << ",loss" << i + 1 << "_mean,loss" << i + 1 << "_std";
  }
  out << ",xi_norm_mean,xi_norm_std";
  if (s.p) out << ",p_mean,p_std";
  out << "\n";
  for (std::size_t r = 0; r < s.recorded_steps.size(); ++r) {
    out << s.recorded_steps[r];
    for (std::size_t i = 0; i < players; ++i) {
      out << ',' << fmt(s.loss[i].mean[r]) << ',' << fmt(s.loss[i].stddev[r]);
    }
    out << ',' << fmt(s.xi_norm.mean[r]) << ',' << fmt(s.xi_norm.stddev[r]);
    if (s.p) out << ',' << fmt(s.p->mean[r]) << ',' << fmt(s.p->stddev[r]);
    out << "\n";
  }
}

void write_json(std::ostream& out, const RunSummary& s) {
  using nlohmann::json;
  auto vec = [](const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  const auto& c = s.config;
  json j;
  j["config"] = {{"game", c.game},
                 {"optimizer", std::string(to_string(c.optimizer.method))},
                 {"alpha", c.optimizer.alpha},
                 {"a", c.optimizer.a},
                 {"b", c.optimizer.b},
                 {"steps", c.step_count()},
                 {"runs", c.runs},
                 {"seed", c.seed},
                 {"init_mean", c.init.mean},
                 {"init_std", c.init.stddev},
                 {"record_every", c.record_every}};
  if (c.game == "ipd") {
    j["config"]["gamma"] = c.ipd.gamma;
    j["config"]["ipd_normalize"] = c.ipd.normalize;
  }
  j["completed_runs"] = s.completed_runs;
  j["failed_runs"] = s.failed_runs;
  j["final_mean_losses"] = vec(s.final_mean_losses());
  j["sos_steps_checked"] = s.sos_steps_checked;
  if (s.sos_steps_checked > 0) j["min_alignment_margin"] = s.min_alignment_margin;

  json series;
  series["step"] = s.recorded_steps;
  for (std::size_t i = 0; i < s.loss.size(); ++i) {
    const std::string name = "loss" + std::to_string(i + 1);
    series[name + "_mean"] = s.loss[i].mean;
    series[name + "_std"] = s.loss[i].stddev;
  }
  series["xi_norm_mean"] = s.xi_norm.mean;
  series["xi_norm_std"] = s.xi_norm.stddev;
  if (s.p) {
    series["p_mean"] = s.p->mean;
    series["p_std"] = s.p->stddev;
  }
  j["series"] = std::move(series);

  json runs = json::array();
  for (const auto& r : s.runs) {
    json jr = {{"run", r.run}, {"ok", r.ok}, {"theta_initial", vec(r.theta_initial)},
               {"theta_final", vec(r.theta_final)}};
    if (r.ok) {
      jr["final_losses"] = vec(r.final_losses);
      jr["final_xi_norm"] = r.final_xi_norm;
    } else {
      jr["error"] = r.error;
    }
    runs.push_back(std::move(jr));
  }
  j["runs"] = std::move(runs);
  out << j.dump(2) << "\n";
}

void write_output(const RunSummary& summary) {
  const std::string& path = summary.config.output_path;
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  if (summary.config.format == OutputFormat::kJson) {
    write_json(out, summary);
  } else {
    write_csv(out, summary);
  }
}

}  // namespace gamegrad
