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

#ifndef IDFACE_RANDOM_HPP_
#define IDFACE_RANDOM_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <span>

namespace idface {

std::uint64_t splitmix64(std::uint64_t x);

// Seed for stream `stream` of a family rooted at `base`. Used to give every
// Monte-Carlo trial its own generator so results do not depend on how trials
// are spread over threads.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Seeded simulation generator. Not for key material.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double gaussian() { return normal_(engine_); }
  bool coin() { return (engine_() >> 63) != 0; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Byte source for key generation and encryption randomness. Implementations
// are safe to share between threads.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;
};

// Reproducible byte stream. Deterministic keys and ciphertexts are only
// useful for tests and benchmarks.
class SeededRandomSource final : public RandomSource {
 public:
  explicit SeededRandomSource(std::uint64_t seed) : engine_(seed) {}
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::mutex mu_;
  std::mt19937_64 engine_;
};

// Operating-system entropy (std::random_device, /dev/urandom on Linux).
class SystemRandomSource final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::mutex mu_;
  std::random_device device_;
};

std::shared_ptr<RandomSource> make_random_source(std::uint64_t seed);
std::shared_ptr<RandomSource> make_system_random_source();

}  // namespace idface

#endif  // IDFACE_RANDOM_HPP_
