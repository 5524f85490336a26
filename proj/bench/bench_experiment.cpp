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

// Parallel experiment runner against the serial reference.

#include <benchmark/benchmark.h>

#include "gamegrad/experiment.hpp"

namespace {

gamegrad::ExperimentConfig config(const char* game, gamegrad::Method method, double alpha,
                                  std::size_t steps) {
  gamegrad::ExperimentConfig cfg;
  cfg.game = game;
  cfg.optimizer.method = method;
  cfg.optimizer.alpha = alpha;
  cfg.runs = 64;
  cfg.steps = steps;
  cfg.record_every = steps;
  return cfg;
}

void BM_TandemSosParallel(benchmark::State& state) {
  const auto cfg = config("tandem", gamegrad::Method::kSos, 0.1, 500);
  for (auto _ : state) benchmark::DoNotOptimize(gamegrad::run_experiment(cfg));
}

void BM_TandemSosSerial(benchmark::State& state) {
  const auto cfg = config("tandem", gamegrad::Method::kSos, 0.1, 500);
  for (auto _ : state) benchmark::DoNotOptimize(gamegrad::run_experiment_serial(cfg));
}

void BM_IpdLolaParallel(benchmark::State& state) {
  auto cfg = config("ipd", gamegrad::Method::kLola, 1.0, 50);
  cfg.threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gamegrad::run_experiment(cfg));
}

void BM_IpdLolaSerial(benchmark::State& state) {
  const auto cfg = config("ipd", gamegrad::Method::kLola, 1.0, 50);
  for (auto _ : state) benchmark::DoNotOptimize(gamegrad::run_experiment_serial(cfg));
}

}  // namespace

BENCHMARK(BM_TandemSosParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TandemSosSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IpdLolaParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IpdLolaSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
