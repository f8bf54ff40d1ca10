// Copyright 2026 The idface Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "idface/analysis.hpp"

namespace {

using namespace idface;

void BM_EpsilonQuadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(analysis::epsilon_theoretical(512, 341, 0.8));
}
BENCHMARK(BM_EpsilonQuadrature)->Unit(benchmark::kMicrosecond);

void BM_IsometryTrial(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(analysis::isometry_mc(512, 341, 341, 0.8, 1, ++seed, 1));
}
BENCHMARK(BM_IsometryTrial)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
