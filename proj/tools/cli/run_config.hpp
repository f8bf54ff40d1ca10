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

#ifndef IDFACE_TOOLS_RUN_CONFIG_HPP_
#define IDFACE_TOOLS_RUN_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idface/ahe/paillier.hpp"
#include "idface/ahe/scheme.hpp"
#include "idface/packing.hpp"
#include "idface/transform.hpp"

namespace idface::cli {

// Settings shared by all subcommands. Values come from defaults, then the
// optional config file, then flags.
struct RunConfig {
  std::size_t d = 512;
  std::size_t alpha = 341;
  std::size_t beta = 63;
  double tau = 0.5;
  std::string backend = "paillier";
  std::string mock_mode;
  std::size_t modulus_bits = 2048;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
  std::string db;
  std::string secret_key = "idface.sec";
  std::string public_key;
  std::string encryption = "fixed-base";
  std::string local_addr;
  std::string key_addr;

  void validate() const;
  // alpha and beta against d; checked by commands that ternarize.
  void validate_counts() const;
  std::uint64_t seed_or(std::uint64_t fallback) const { return seed.value_or(fallback); }
  // Seeded stream when a seed is set, otherwise system entropy.
  std::shared_ptr<RandomSource> random_source(std::uint64_t stream) const;
};

ahe::EncryptionMode parse_encryption(const std::string& name);

// Public scheme for the configured backend. Paillier keys come from
// public_key_path (or the database's public.key when empty).
std::shared_ptr<const ahe::PublicScheme> load_public(const RunConfig& cfg, const std::string& public_key_path);
std::shared_ptr<const ahe::SecretScheme> load_secret(const RunConfig& cfg);

packing::PackingParams packing_for(const RunConfig& cfg, const ahe::PublicScheme& pk);

// Reads a single-column list of ids, one per line.
std::vector<std::string> read_ids(const std::string& path);
std::vector<std::string> numbered_ids(std::size_t first, std::size_t count);

transform::FeatureTemplate read_query(const std::string& path, std::size_t row);

std::vector<std::string> split_list(const std::string& text);
std::vector<std::uint64_t> parse_u64_list(const std::string& text);

}  // namespace idface::cli

#endif  // IDFACE_TOOLS_RUN_CONFIG_HPP_
