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

#ifndef IDFACE_DB_STORE_HPP_
#define IDFACE_DB_STORE_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "idface/ahe/paillier.hpp"
#include "idface/ahe/scheme.hpp"
#include "idface/dbenc.hpp"

namespace idface::dbenc {

// On-disk layout of an encrypted database directory:
//
//   meta.json               parameters, key fingerprint, per-batch id lists
//   public.key              Paillier public key (Paillier backend only)
//   batch_NNNNN.plus.ct     d records of [u32 length][ciphertext_bytes bytes]
//   batch_NNNNN.minus.ct
//
// Every ciphertext record is padded to the backend's fixed ciphertext size,
// so the payload of a database is exactly encrypted_storage_bytes() and
// each record adds a 4-byte length prefix.
struct DbMeta {
  std::size_t d = 0;
  packing::PackingParams packing;
  ahe::BackendDescriptor backend;
  std::uint64_t key_fingerprint = 0;
  std::vector<std::vector<std::string>> batch_ids;

  std::size_t identity_count() const;
};

class DbStore {
 public:
  // Creates an empty database directory. Fails if meta.json already exists.
  static DbStore create(const std::string& dir, const DbMeta& meta);
  static DbStore open(const std::string& dir);

  const DbMeta& meta() const { return meta_; }
  const std::string& dir() const { return dir_; }

  void append(const EncryptedBatch& batch, const ahe::PublicScheme& pk);
  EncryptedBatch load_batch(std::size_t index, const ahe::PublicScheme& pk) const;
  std::vector<EncryptedBatch> load_all(const ahe::PublicScheme& pk) const;

  // Ciphertext file bytes on disk: payload plus record prefixes.
  std::uint64_t ciphertext_file_bytes() const;
  std::uint64_t ciphertext_record_count() const;

  std::string batch_path(std::size_t index, bool plus) const;

 private:
  DbStore(std::string dir, DbMeta meta) : dir_(std::move(dir)), meta_(std::move(meta)) {}
  void write_meta() const;

  std::string dir_;
  DbMeta meta_;
};

void write_ciphertext_file(const std::string& path, const std::vector<Ciphertext>& cts,
                           const ahe::PublicScheme& pk);
std::vector<Ciphertext> read_ciphertext_file(const std::string& path, const ahe::PublicScheme& pk,
                                             std::size_t expected_count);

}  // namespace idface::dbenc

#endif  // IDFACE_DB_STORE_HPP_
