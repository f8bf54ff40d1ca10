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

#ifndef IDFACE_TESTS_TEST_SUPPORT_HPP_
#define IDFACE_TESTS_TEST_SUPPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "idface/ahe/paillier.hpp"
#include "idface/random.hpp"
#include "idface/transform.hpp"

namespace idface::testing {

// Deterministic Paillier key of the given size; cached per size.
inline const ahe::PaillierKeyPair& test_key(std::size_t bits) {
  static std::vector<std::pair<std::size_t, std::unique_ptr<ahe::PaillierKeyPair>>> cache;
  for (const auto& [b, kp] : cache) {
    if (b == bits) return *kp;
  }
  SeededRandomSource rng(0x5eed0000 + bits);
  cache.emplace_back(bits, std::make_unique<ahe::PaillierKeyPair>(ahe::paillier_keygen(bits, rng)));
  return *cache.back().second;
}

struct TestScheme {
  std::shared_ptr<ahe::PaillierPublic> pub;
  std::shared_ptr<ahe::PaillierSecret> sec;
};

inline TestScheme make_scheme(const ahe::PaillierKeyPair& kp, ahe::SlotLayout layout, std::uint64_t seed,
                              ahe::EncryptionMode mode = ahe::EncryptionMode::kStandard) {
  TestScheme s;
  s.pub = std::make_shared<ahe::PaillierPublic>(kp.pub, layout, make_random_source(seed), mode);
  s.sec = std::make_shared<ahe::PaillierSecret>(kp.sec, s.pub);
  return s;
}

inline std::vector<transform::FeatureTemplate> random_templates(std::size_t count, std::size_t d, Rng& rng) {
  std::vector<transform::FeatureTemplate> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(transform::random_unit(d, rng));
  return out;
}

inline std::vector<std::string> make_ids(std::size_t count, const std::string& prefix = "user") {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < count; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

// Fresh empty directory under the system temp dir.
inline std::string temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("idface_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace idface::testing

#endif  // IDFACE_TESTS_TEST_SUPPORT_HPP_
