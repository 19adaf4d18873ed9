// Copyright 2026 The ptwalk Authors
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
#include <benchmark/benchmark.h>

#include <cmath>

#include "ptwalk/dynamics.hpp"
#include "ptwalk/measures.hpp"
#include "ptwalk/metric.hpp"
#include "ptwalk/toy.hpp"
#include "ptwalk/walk.hpp"

namespace {

ptwalk::WalkParams params(double exp_gamma) { return {M_PI / 4, -M_PI / 7, std::log(exp_gamma), 101}; }

void BM_BuildMetric(benchmark::State& state) {
  const auto p = params(1.3);
  for (auto _ : state) benchmark::DoNotOptimize(ptwalk::build_metric(p, ptwalk::MetricSpec::random_xy(11)));
}
BENCHMARK(BM_BuildMetric);

void BM_EuclideanWalk(benchmark::State& state) {
  const auto p = params(1.3);
  for (auto _ : state) benchmark::DoNotOptimize(ptwalk::build_euclidean_walk(p, ptwalk::MetricSpec::flat()));
}
BENCHMARK(BM_EuclideanWalk);

void BM_ChannelSeries(benchmark::State& state) {
  const auto ew = ptwalk::build_euclidean_walk(params(1.2), ptwalk::MetricSpec::random_xy(23));
  for (auto _ : state) benchmark::DoNotOptimize(ptwalk::channel_series(ew, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ChannelSeries)->Arg(10)->Arg(50);

void BM_RhpSeries(benchmark::State& state) {
  const auto ew = ptwalk::build_euclidean_walk(params(1.2), ptwalk::MetricSpec::flat());
  const auto maps = ptwalk::channel_series(ew, 50);
  for (auto _ : state) benchmark::DoNotOptimize(ptwalk::rhp_series(maps));
}
BENCHMARK(BM_RhpSeries);

void BM_MaximizeBlp(benchmark::State& state) {
  const auto ew = ptwalk::build_euclidean_walk(params(1.2), ptwalk::MetricSpec::flat());
  const auto maps = ptwalk::channel_series(ew, 50);
  ptwalk::AnnealSchedule sch;
  sch.temperature_levels = 10;
  for (auto _ : state) benchmark::DoNotOptimize(ptwalk::maximize_blp(maps, sch).n_max);
}
BENCHMARK(BM_MaximizeBlp)->Unit(benchmark::kMillisecond);

void BM_Toy(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ptwalk::run_toy(ptwalk::ToyConfig{}));
}
BENCHMARK(BM_Toy)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
