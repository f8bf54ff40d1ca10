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

#include <map>

#include "idface/ahe/paillier.hpp"

namespace {

using namespace idface;

struct Fixture {
  std::shared_ptr<ahe::PaillierPublic> pub;
  std::shared_ptr<ahe::PaillierSecret> sec;
};

const Fixture& fixture(std::size_t bits, ahe::EncryptionMode mode) {
  static std::map<std::pair<std::size_t, int>, Fixture> cache;
  auto& f = cache[{bits, static_cast<int>(mode)}];
  if (!f.pub) {
    SeededRandomSource rng(bits);
    const auto kp = ahe::paillier_keygen(bits, rng);
    f.pub = std::make_shared<ahe::PaillierPublic>(kp.pub, ahe::default_layout(kp.pub), make_random_source(1), mode);
    f.sec = std::make_shared<ahe::PaillierSecret>(kp.sec, f.pub);
  }
  return f;
}

void BM_Encrypt(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)), static_cast<ahe::EncryptionMode>(state.range(1)));
  const ahe::Plaintext m{mpz_class(12345)};
  for (auto _ : state) benchmark::DoNotOptimize(f.pub->encrypt(m));
}
BENCHMARK(BM_Encrypt)->ArgsProduct({{1024, 2048}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_Add(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)), ahe::EncryptionMode::kFixedBase);
  auto acc = f.pub->encrypt({mpz_class(1)});
  const auto b = f.pub->encrypt({mpz_class(2)});
  for (auto _ : state) f.pub->add_inplace(acc, b);
}
BENCHMARK(BM_Add)->Arg(1024)->Arg(2048)->Unit(benchmark::kMicrosecond);

void BM_Decrypt(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)), ahe::EncryptionMode::kFixedBase);
  const auto c = f.pub->encrypt({mpz_class(777)});
  for (auto _ : state) benchmark::DoNotOptimize(f.sec->decrypt(c));
}
BENCHMARK(BM_Decrypt)->Arg(1024)->Arg(2048)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
