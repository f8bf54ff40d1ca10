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

#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include "idface/ahe/keyfile.hpp"
#include "idface/ahe/simulated_simd.hpp"
#include "idface/error.hpp"
#include "idface/random.hpp"
#include "idface/template_io.hpp"

namespace idface::cli {

void RunConfig::validate() const {
  if (d < 2) fail(ErrorCode::kInvalidArgument, "d must be at least 2");
  if (!(tau >= -1.0 && tau <= 1.0)) fail(ErrorCode::kInvalidArgument, "tau must lie in [-1, 1]");
}

void RunConfig::validate_counts() const {
  if (alpha == 0 || alpha > d) fail(ErrorCode::kInvalidArgument, "alpha must lie in [1, d]");
  if (beta == 0 || beta > alpha) fail(ErrorCode::kInvalidArgument, "beta must lie in [1, alpha]");
}

std::shared_ptr<RandomSource> RunConfig::random_source(std::uint64_t stream) const {
  if (seed) return make_random_source(derive_seed(*seed, stream));
  return make_system_random_source();
}

ahe::EncryptionMode parse_encryption(const std::string& name) {
  if (name == "standard") return ahe::EncryptionMode::kStandard;
  if (name == "fixed-base") return ahe::EncryptionMode::kFixedBase;
  fail(ErrorCode::kInvalidArgument, "unknown encryption mode '" + name + "' (standard|fixed-base)");
}

std::shared_ptr<const ahe::PublicScheme> load_public(const RunConfig& cfg, const std::string& public_key_path) {
  const auto kind = ahe::parse_backend(cfg.backend);
  if (kind == ahe::BackendKind::kSimulatedSimd) return ahe::SimulatedSimd::create(cfg.mock_mode);
  const auto pk = ahe::read_public_key(public_key_path);
  return std::make_shared<ahe::PaillierPublic>(pk, ahe::default_layout(pk), cfg.random_source(0x656e63),
                                               parse_encryption(cfg.encryption));
}

std::shared_ptr<const ahe::SecretScheme> load_secret(const RunConfig& cfg) {
  const auto kind = ahe::parse_backend(cfg.backend);
  if (kind == ahe::BackendKind::kSimulatedSimd) return ahe::SimulatedSimd::create(cfg.mock_mode);
  const auto sk = ahe::read_secret_key(cfg.secret_key);
  const auto pk = sk.public_key();
  auto pub = std::make_shared<ahe::PaillierPublic>(pk, ahe::default_layout(pk), cfg.random_source(0x656e63));
  return std::make_shared<ahe::PaillierSecret>(sk, pub);
}

packing::PackingParams packing_for(const RunConfig& cfg, const ahe::PublicScheme& pk) {
  return packing::capacity(pk.descriptor().slot_bits, cfg.alpha, cfg.beta);
}

std::vector<std::string> read_ids(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoFailure, "cannot open " + path);
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

std::vector<std::string> numbered_ids(std::size_t first, std::size_t count) {
  std::vector<std::string> ids;
  ids.reserve(count);
  char buf[32];
  for (std::size_t i = 0; i < count; ++i) {
    std::snprintf(buf, sizeof(buf), "id%07zu", first + i);
    ids.emplace_back(buf);
  }
  return ids;
}

transform::FeatureTemplate read_query(const std::string& path, std::size_t row) {
  auto rows = transform::read_templates_file(path);
  if (row >= rows.size()) {
    fail(ErrorCode::kInvalidArgument, path + " has " + std::to_string(rows.size()) + " rows, asked for row " +
                                          std::to_string(row));
  }
  return rows[row];
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& s : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(s, &used));
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      fail(ErrorCode::kInvalidArgument, "not an unsigned integer: '" + s + "'");
    }
  }
  return out;
}

}  // namespace idface::cli
