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

#include "idface/ahe/paillier.hpp"
#include "idface/dbenc.hpp"
#include "idface/packing.hpp"
#include "idface/twopc.hpp"

namespace {

using namespace idface;

constexpr std::size_t kDim = 512;
constexpr std::size_t kAlpha = 341;

std::vector<transform::FeatureTemplate> templates(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<transform::FeatureTemplate> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(transform::random_unit(kDim, rng));
  return out;
}

void BM_PackEncode(benchmark::State& state) {
  const auto params = packing::capacity(2048, kAlpha, 63);
  std::vector<transform::TernaryTemplate> Z;
  for (const auto& x : templates(params.m, 1)) Z.push_back(transform::ternarize(x, kAlpha));
  for (auto _ : state) benchmark::DoNotOptimize(packing::encode(Z, params));
}
BENCHMARK(BM_PackEncode)->Unit(benchmark::kMillisecond);

// One batch of the encrypted inner product at each query sparsity.
void BM_IpDb(benchmark::State& state) {
  const auto beta = static_cast<std::size_t>(state.range(0));
  SeededRandomSource key_rng(2);
  const auto kp = ahe::paillier_keygen(2048, key_rng);
  ahe::PaillierPublic pk(kp.pub, ahe::default_layout(kp.pub), make_random_source(3), ahe::EncryptionMode::kFixedBase);
  const auto params = packing::capacity(2048, kAlpha, beta);
  const auto X = templates(8, 4);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < X.size(); ++i) ids.push_back(std::to_string(i));
  const auto batch = dbenc::idface_enc_db(X, ids, params, pk);
  Rng rng(5);
  const auto y = transform::random_unit(kDim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dbenc::idface_ip_db(y, batch, beta, pk));
}
BENCHMARK(BM_IpDb)->Arg(63)->Arg(127)->Arg(341)->Unit(benchmark::kMillisecond);

void BM_Score2pc(benchmark::State& state) {
  Rng rng(6);
  const auto x = transform::random_unit(kDim, rng);
  const auto shares = twopc::gen_share(x, kAlpha, 2, rng);
  const auto q = transform::split(transform::ternarize(transform::random_unit(kDim, rng), 63));
  for (auto _ : state) benchmark::DoNotOptimize(twopc::score_2pc_subvector(shares, q));
}
BENCHMARK(BM_Score2pc);

}  // namespace

BENCHMARK_MAIN();
