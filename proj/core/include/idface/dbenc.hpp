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

#ifndef IDFACE_DBENC_HPP_
#define IDFACE_DBENC_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "idface/ahe/scheme.hpp"
#include "idface/packing.hpp"
#include "idface/transform.hpp"

namespace idface::dbenc {

using ahe::Ciphertext;
using IntegerMatrix = std::vector<std::vector<mpz_class>>;

// ---- Column-wise baseline -------------------------------------------------

// Encrypts column i of X (rows are slots) into ciphertext i. Entries must be
// nonnegative and fit a slot.
std::vector<Ciphertext> enc_db_base(const IntegerMatrix& X, const ahe::PublicScheme& pk);

// Encrypted X*y. Zero weights are skipped, unit weights are plain additions
// and only weights above one use scalar multiplication. An all-zero y gives
// a fresh encryption of zero.
Ciphertext ip_db_base(const std::vector<mpz_class>& y, const std::vector<Ciphertext>& C,
                      const ahe::PublicScheme& pk);

// Signed fixed-point weights round(x * 2^frac_bits); frac_bits = 15 maps
// [-1, 1] into 16-bit integers.
std::vector<std::int64_t> quantize_fixed_point(const std::vector<double>& x, int frac_bits = 15);

// ---- Packed ternary database ----------------------------------------------

struct EncryptedBatch {
  // Position (slot j, digit i) holds ids[i + m*j].
  std::vector<std::string> ids;
  std::vector<Ciphertext> c_plus;
  std::vector<Ciphertext> c_minus;
  packing::PackingParams packing;
  ahe::BackendDescriptor backend;

  std::size_t dim() const { return c_plus.size(); }
  std::size_t capacity() const { return packing.m * backend.slot_count; }
};

struct ScorePair {
  Ciphertext ct_plus;
  Ciphertext ct_minus;
};

struct IpDbStats {
  std::uint64_t raw_additions = 0;      // inside the four sign-split sums
  std::uint64_t combine_additions = 0;  // merging them into the pair
  std::uint64_t scalar_muls = 0;
  std::uint64_t zero_encryptions = 0;   // empty sign support
  std::uint64_t total_additions() const { return raw_additions + combine_additions; }
};

// Ternarizes rows with alpha = params.alpha, packs m per slot and encrypts
// the packed columns per sign. ids.size() must equal X.size().
EncryptedBatch idface_enc_db(const std::vector<transform::FeatureTemplate>& X,
                             const std::vector<std::string>& ids, const packing::PackingParams& params,
                             const ahe::PublicScheme& pk, std::size_t threads = 0);
EncryptedBatch idface_enc_db_ternary(const std::vector<transform::TernaryTemplate>& Z,
                                     const std::vector<std::string>& ids,
                                     const packing::PackingParams& params, const ahe::PublicScheme& pk,
                                     std::size_t threads = 0);

// Splits any number of templates into consecutive full batches.
std::vector<EncryptedBatch> idface_enc_db_all(const std::vector<transform::FeatureTemplate>& X,
                                              const std::vector<std::string>& ids,
                                              const packing::PackingParams& params,
                                              const ahe::PublicScheme& pk, std::size_t threads = 0);

// Query scoring with T_beta; stats (optional) receives the operation tally.
ScorePair idface_ip_db(const transform::FeatureTemplate& y, const EncryptedBatch& C, std::size_t beta,
                       const ahe::PublicScheme& pk, IpDbStats* stats = nullptr);
ScorePair idface_ip_db_ternary(const transform::TernaryTemplate& z, const EncryptedBatch& C,
                               const ahe::PublicScheme& pk, IpDbStats* stats = nullptr);

// Signed score of every occupied position, ordered by ids index.
std::vector<std::int64_t> decode_scores(const ahe::Plaintext& plus, const ahe::Plaintext& minus,
                                        const packing::PackingParams& params, std::size_t valid_count);

// 2 * ceil(D / (m * slot_count)) * d * ciphertext_bytes.
std::uint64_t encrypted_storage_bytes(std::uint64_t identities, const packing::PackingParams& params,
                                      const ahe::BackendDescriptor& backend, std::size_t d);
std::uint64_t batch_count(std::uint64_t identities, const packing::PackingParams& params,
                          const ahe::BackendDescriptor& backend);

}  // namespace idface::dbenc

#endif  // IDFACE_DBENC_HPP_
