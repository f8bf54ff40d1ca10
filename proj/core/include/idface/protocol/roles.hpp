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

#ifndef IDFACE_PROTOCOL_ROLES_HPP_
#define IDFACE_PROTOCOL_ROLES_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_set>
#include <vector>

#include "idface/ahe/scheme.hpp"
#include "idface/db_store.hpp"
#include "idface/dbenc.hpp"
#include "idface/protocol/transport.hpp"
#include "idface/protocol/wire.hpp"
#include "idface/transform.hpp"

namespace idface::protocol {

// Smallest integer score that a cosine threshold tau can demand:
// ceil(tau * sqrt(alpha * beta)), with a 1e-9 guard so that exact products
// such as 0.5 * sqrt(4 * 4) are not pushed up by rounding. A match must
// score strictly above this value.
std::int64_t threshold_int(double tau, std::size_t alpha, std::size_t beta);

struct MatchResult {
  bool accepted = false;
  std::string id;
  std::uint32_t batch = 0;
  std::uint32_t position = 0;  // slot * m + digit inside the batch
  bool operator==(const MatchResult&) const = default;
};

// Holds the secret key only. Decrypts, decodes, takes the global argmax
// (lowest batch, slot, digit wins ties) and answers with an index or
// reject; scores never leave this object.
class KeyServer {
 public:
  explicit KeyServer(std::shared_ptr<const ahe::SecretScheme> sk,
                     std::optional<packing::PackingParams> expected = std::nullopt);

  IdxResponse handle(const ScoreBatchRequest& req) const;
  Message handle_message(const Message& msg) const;
  Handler handler() const;

 private:
  std::shared_ptr<const ahe::SecretScheme> sk_;
  std::shared_ptr<const ahe::PublicScheme> pk_;
  std::optional<packing::PackingParams> expected_;
};

// Holds the public key and the encrypted database. Enrollment is
// exclusive; scoring takes a shared lock so queries run concurrently.
class LocalServer {
 public:
  LocalServer(std::shared_ptr<const ahe::PublicScheme> pk, const packing::PackingParams& params,
              std::size_t d, std::size_t threads = 0);

  // Writes each new batch through to store when one is attached.
  void attach_store(dbenc::DbStore* store) { store_ = store; }

  // Appends ceil(n / capacity) new batches. Throws DuplicateId before
  // encrypting anything if an id repeats.
  void enroll(const std::vector<transform::FeatureTemplate>& templates, const std::vector<std::string>& ids);
  void load(std::vector<dbenc::EncryptedBatch> batches);

  std::size_t batch_count() const;
  std::size_t identity_count() const;
  const packing::PackingParams& params() const { return params_; }
  std::size_t dim() const { return d_; }
  std::shared_ptr<const ahe::PublicScheme> public_scheme() const { return pk_; }

  // Scores every batch. stats, when given, accumulates per-batch tallies.
  ScoreBatchRequest score(const transform::FeatureTemplate& y, double tau,
                          std::vector<dbenc::IpDbStats>* stats = nullptr) const;
  MatchResult resolve(const IdxResponse& resp) const;
  MatchResult identify(const transform::FeatureTemplate& y, double tau, Link& key_server) const;

  // Answers IdentifyRequest frames from clients, forwarding to key_server.
  Message handle_message(const Message& msg, Link& key_server) const;

  // Human-readable dump of everything this role holds (no key material
  // beyond the public modulus fingerprint).
  std::string state_summary() const;

 private:
  std::shared_ptr<const ahe::PublicScheme> pk_;
  packing::PackingParams params_;
  std::size_t d_;
  std::size_t threads_;
  dbenc::DbStore* store_ = nullptr;
  mutable std::shared_mutex mu_;
  std::vector<dbenc::EncryptedBatch> db_;
  std::unordered_set<std::string> ids_;
};

// Plaintext pipeline used as the reference for the encrypted one:
// ternarize, integer inner products, argmax with lowest-index ties, strict
// threshold.
struct ReferenceResult {
  MatchResult match;
  std::vector<std::int64_t> scores;
};
ReferenceResult reference_identify(const std::vector<transform::TernaryTemplate>& enrolled,
                                   const std::vector<std::string>& ids, const transform::FeatureTemplate& y,
                                   std::size_t alpha, std::size_t beta, double tau, std::size_t batch_capacity);

}  // namespace idface::protocol

#endif  // IDFACE_PROTOCOL_ROLES_HPP_
