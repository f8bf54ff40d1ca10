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

#include "idface/db_store.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "idface/bigint.hpp"
#include "idface/error.hpp"

namespace idface::dbenc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kFormat = "idface-db v1";

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json meta_to_json(const DbMeta& m) {
  json j;
  j["format"] = kFormat;
  j["d"] = m.d;
  j["alpha"] = m.packing.alpha;
  j["beta"] = m.packing.beta;
  j["p"] = m.packing.p;
  j["digit_bits"] = m.packing.digit_bits;
  j["m"] = m.packing.m;
  j["slot_bits"] = m.packing.slot_bits;
  j["backend"] = ahe::backend_name(m.backend.kind);
  j["slot_count"] = m.backend.slot_count;
  j["backend_slot_bits"] = m.backend.slot_bits;
  j["ciphertext_bytes"] = m.backend.ciphertext_bytes;
  j["key_fingerprint"] = hex64(m.key_fingerprint);
  j["batches"] = json::array();
  for (const auto& ids : m.batch_ids) j["batches"].push_back(json{{"ids", ids}});
  return j;
}

DbMeta meta_from_json(const json& j) {
  if (j.value("format", "") != kFormat) fail(ErrorCode::kIoFailure, "not an idface database");
  DbMeta m;
  m.d = j.at("d").get<std::size_t>();
  m.packing.alpha = j.at("alpha").get<std::size_t>();
  m.packing.beta = j.at("beta").get<std::size_t>();
  m.packing.p = j.at("p").get<std::uint64_t>();
  m.packing.digit_bits = j.at("digit_bits").get<std::size_t>();
  m.packing.m = j.at("m").get<std::size_t>();
  m.packing.slot_bits = j.at("slot_bits").get<std::size_t>();
  m.backend.kind = ahe::parse_backend(j.at("backend").get<std::string>());
  m.backend.slot_count = j.at("slot_count").get<std::size_t>();
  m.backend.slot_bits = j.at("backend_slot_bits").get<std::size_t>();
  m.backend.ciphertext_bytes = j.at("ciphertext_bytes").get<std::size_t>();
  m.key_fingerprint = std::stoull(j.at("key_fingerprint").get<std::string>(), nullptr, 16);
  for (const auto& b : j.at("batches")) m.batch_ids.push_back(b.at("ids").get<std::vector<std::string>>());
  return m;
}

void check_scheme(const DbMeta& meta, const ahe::PublicScheme& pk) {
  if (pk.key_id() != meta.key_fingerprint) fail(ErrorCode::kKeyMismatch, "database was encrypted under another key");
  if (!(pk.descriptor() == meta.backend)) fail(ErrorCode::kParamMismatch, "backend layout differs from the database");
}

}  // namespace

std::size_t DbMeta::identity_count() const {
  std::size_t n = 0;
  for (const auto& ids : batch_ids) n += ids.size();
  return n;
}

DbStore DbStore::create(const std::string& dir, const DbMeta& meta) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIoFailure, "cannot create " + dir + ": " + ec.message());
  if (fs::exists(fs::path(dir) / "meta.json")) fail(ErrorCode::kIoFailure, dir + " already holds a database");
  DbStore store(dir, meta);
  store.meta_.batch_ids.clear();
  store.write_meta();
  return store;
}

DbStore DbStore::open(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "meta.json");
  if (!in) fail(ErrorCode::kIoFailure, "no database at " + dir);
  json j;
  try {
    in >> j;
    return DbStore(dir, meta_from_json(j));
  } catch (const json::exception& e) {
    fail(ErrorCode::kIoFailure, std::string("bad meta.json: ") + e.what());
  }
}

void DbStore::write_meta() const {
  const fs::path tmp = fs::path(dir_) / "meta.json.tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(ErrorCode::kIoFailure, "cannot write metadata in " + dir_);
    out << meta_to_json(meta_).dump(1) << '\n';
    if (!out) fail(ErrorCode::kIoFailure, "metadata write failed");
  }
  fs::rename(tmp, fs::path(dir_) / "meta.json");
}

std::string DbStore::batch_path(std::size_t index, bool plus) const {
  char name[40];
  std::snprintf(name, sizeof(name), "batch_%05zu.%s.ct", index, plus ? "plus" : "minus");
  return (fs::path(dir_) / name).string();
}

void DbStore::append(const EncryptedBatch& batch, const ahe::PublicScheme& pk) {
  check_scheme(meta_, pk);
  if (batch.dim() != meta_.d) fail(ErrorCode::kDimensionMismatch, "batch dimension differs from database");
  if (!(batch.packing == meta_.packing)) fail(ErrorCode::kParamMismatch, "batch packing differs from database");
  std::set<std::string> seen;
  for (const auto& ids : meta_.batch_ids) seen.insert(ids.begin(), ids.end());
  for (const auto& id : batch.ids) {
    if (!seen.insert(id).second) fail(ErrorCode::kDuplicateId, "identity '" + id + "' already enrolled");
  }
  const std::size_t index = meta_.batch_ids.size();
  write_ciphertext_file(batch_path(index, true), batch.c_plus, pk);
  write_ciphertext_file(batch_path(index, false), batch.c_minus, pk);
  meta_.batch_ids.push_back(batch.ids);
  write_meta();
}

EncryptedBatch DbStore::load_batch(std::size_t index, const ahe::PublicScheme& pk) const {
  check_scheme(meta_, pk);
  if (index >= meta_.batch_ids.size()) fail(ErrorCode::kInvalidArgument, "batch index out of range");
  EncryptedBatch b;
  b.ids = meta_.batch_ids[index];
  b.packing = meta_.packing;
  b.backend = meta_.backend;
  b.c_plus = read_ciphertext_file(batch_path(index, true), pk, meta_.d);
  b.c_minus = read_ciphertext_file(batch_path(index, false), pk, meta_.d);
  return b;
}

std::vector<EncryptedBatch> DbStore::load_all(const ahe::PublicScheme& pk) const {
  std::vector<EncryptedBatch> out;
  out.reserve(meta_.batch_ids.size());
  for (std::size_t i = 0; i < meta_.batch_ids.size(); ++i) out.push_back(load_batch(i, pk));
  return out;
}

std::uint64_t DbStore::ciphertext_file_bytes() const {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < meta_.batch_ids.size(); ++i) {
    total += fs::file_size(batch_path(i, true));
    total += fs::file_size(batch_path(i, false));
  }
  return total;
}

std::uint64_t DbStore::ciphertext_record_count() const {
  return 2 * static_cast<std::uint64_t>(meta_.batch_ids.size()) * meta_.d;
}

void write_ciphertext_file(const std::string& path, const std::vector<Ciphertext>& cts,
                           const ahe::PublicScheme& pk) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIoFailure, "cannot create " + path);
  std::vector<std::uint8_t> prefix;
  for (const auto& ct : cts) {
    const auto bytes = pk.to_fixed_bytes(ct);
    prefix.clear();
    put_u32(prefix, static_cast<std::uint32_t>(bytes.size()));
    out.write(reinterpret_cast<const char*>(prefix.data()), 4);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) fail(ErrorCode::kIoFailure, "write to " + path + " failed");
}

std::vector<Ciphertext> read_ciphertext_file(const std::string& path, const ahe::PublicScheme& pk,
                                             std::size_t expected_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoFailure, "cannot open " + path);
  std::vector<Ciphertext> out;
  out.reserve(expected_count);
  std::vector<std::uint8_t> buf;
  std::uint8_t prefix[4];
  const std::size_t limit = pk.descriptor().ciphertext_bytes;
  while (in.read(reinterpret_cast<char*>(prefix), 4)) {
    const std::uint32_t len = get_u32(prefix);
    if (len > limit) fail(ErrorCode::kLengthMismatch, path + ": record longer than a ciphertext");
    buf.resize(len);
    if (!in.read(reinterpret_cast<char*>(buf.data()), len)) fail(ErrorCode::kIoFailure, path + ": truncated record");
    out.push_back(pk.from_bytes(buf.data(), buf.size()));
  }
  if (in.gcount() != 0) fail(ErrorCode::kIoFailure, path + ": truncated record prefix");
  if (out.size() != expected_count) {
    fail(ErrorCode::kLengthMismatch, path + ": expected " + std::to_string(expected_count) + " ciphertexts");
  }
  return out;
}

}  // namespace idface::dbenc
