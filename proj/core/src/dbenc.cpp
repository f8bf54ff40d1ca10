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

#include "idface/dbenc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idface/error.hpp"
#include "idface/parallel.hpp"

namespace idface::dbenc {

std::vector<Ciphertext> enc_db_base(const IntegerMatrix& X, const ahe::PublicScheme& pk) {
  const auto desc = pk.descriptor();
  if (X.empty()) fail(ErrorCode::kInvalidArgument, "empty matrix");
  if (X.size() > desc.slot_count) {
    fail(ErrorCode::kSlotOverflow, std::to_string(X.size()) + " rows exceed " +
                                       std::to_string(desc.slot_count) + " slots");
  }
  const std::size_t d = X.front().size();
  std::vector<Ciphertext> out;
  out.reserve(d);
  for (std::size_t c = 0; c < d; ++c) {
    ahe::Plaintext column(X.size());
    for (std::size_t r = 0; r < X.size(); ++r) {
      if (X[r].size() != d) fail(ErrorCode::kDimensionMismatch, "ragged matrix");
      column[r] = X[r][c];
    }
    out.push_back(pk.encrypt(column));
  }
  return out;
}

Ciphertext ip_db_base(const std::vector<mpz_class>& y, const std::vector<Ciphertext>& C,
                      const ahe::PublicScheme& pk) {
  if (y.size() != C.size()) fail(ErrorCode::kDimensionMismatch, "query and database dimensions differ");
  bool have = false;
  Ciphertext acc;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (sgn(y[i]) < 0) fail(ErrorCode::kInvalidArgument, "weights must be nonnegative");
    if (y[i] == 0) continue;
    if (!have) {
      acc = y[i] == 1 ? C[i] : pk.scalar_mul(y[i], C[i]);
      have = true;
    } else if (y[i] == 1) {
      pk.add_inplace(acc, C[i]);
    } else {
      pk.add_inplace(acc, pk.scalar_mul(y[i], C[i]));
    }
  }
  return have ? acc : pk.encrypt_zero();
}

std::vector<std::int64_t> quantize_fixed_point(const std::vector<double>& x, int frac_bits) {
  const double scale = std::ldexp(1.0, frac_bits);
  std::vector<std::int64_t> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::llround(x[i] * scale);
  return out;
}

EncryptedBatch idface_enc_db_ternary(const std::vector<transform::TernaryTemplate>& Z,
                                     const std::vector<std::string>& ids,
                                     const packing::PackingParams& params, const ahe::PublicScheme& pk,
                                     std::size_t threads) {
  const auto desc = pk.descriptor();
  if (Z.empty()) fail(ErrorCode::kInvalidArgument, "no templates to enroll");
  if (ids.size() != Z.size()) fail(ErrorCode::kInvalidArgument, "one id per template required");
  if (params.slot_bits > desc.slot_bits) {
    fail(ErrorCode::kParamMismatch, "packing assumes wider slots than the backend provides");
  }
  const std::size_t cap = params.m * desc.slot_count;
  if (Z.size() > cap) {
    fail(ErrorCode::kTooManyTemplates, std::to_string(Z.size()) + " templates exceed batch capacity " +
                                           std::to_string(cap));
  }
  const std::size_t d = Z.front().dim();
  const std::size_t groups = (Z.size() + params.m - 1) / params.m;
  std::vector<packing::PackedVector> plus(groups);
  std::vector<packing::PackedVector> minus(groups);
  for (std::size_t j = 0; j < groups; ++j) {
    const auto first = Z.begin() + static_cast<std::ptrdiff_t>(j * params.m);
    const auto last = Z.begin() + static_cast<std::ptrdiff_t>(std::min(Z.size(), (j + 1) * params.m));
    auto packed = packing::encode(std::vector<transform::TernaryTemplate>(first, last), params);
    if (packed.first.dim() != d) fail(ErrorCode::kDimensionMismatch, "templates differ in dimension");
    plus[j] = std::move(packed.first);
    minus[j] = std::move(packed.second);
  }
  EncryptedBatch batch;
  batch.ids = ids;
  batch.packing = params;
  batch.backend = desc;
  batch.c_plus.resize(d);
  batch.c_minus.resize(d);
  parallel_for(2 * d, threads, [&](std::size_t t) {
    const std::size_t c = t / 2;
    const auto& source = (t % 2 == 0) ? plus : minus;
    ahe::Plaintext slots(groups);
    for (std::size_t j = 0; j < groups; ++j) slots[j] = source[j].entries[c];
    (t % 2 == 0 ? batch.c_plus : batch.c_minus)[c] = pk.encrypt(slots);
  });
  return batch;
}

EncryptedBatch idface_enc_db(const std::vector<transform::FeatureTemplate>& X,
                             const std::vector<std::string>& ids, const packing::PackingParams& params,
                             const ahe::PublicScheme& pk, std::size_t threads) {
  std::vector<transform::TernaryTemplate> Z;
  Z.reserve(X.size());
  for (const auto& x : X) Z.push_back(transform::ternarize(x, params.alpha));
  return idface_enc_db_ternary(Z, ids, params, pk, threads);
}

std::vector<EncryptedBatch> idface_enc_db_all(const std::vector<transform::FeatureTemplate>& X,
                                              const std::vector<std::string>& ids,
                                              const packing::PackingParams& params,
                                              const ahe::PublicScheme& pk, std::size_t threads) {
  if (ids.size() != X.size()) fail(ErrorCode::kInvalidArgument, "one id per template required");
  const std::size_t cap = params.m * pk.descriptor().slot_count;
  std::vector<EncryptedBatch> out;
  for (std::size_t start = 0; start < X.size(); start += cap) {
    const std::size_t end = std::min(X.size(), start + cap);
    std::vector<transform::FeatureTemplate> part(X.begin() + static_cast<std::ptrdiff_t>(start),
                                                 X.begin() + static_cast<std::ptrdiff_t>(end));
    std::vector<std::string> part_ids(ids.begin() + static_cast<std::ptrdiff_t>(start),
                                      ids.begin() + static_cast<std::ptrdiff_t>(end));
    out.push_back(idface_enc_db(part, part_ids, params, pk, threads));
  }
  return out;
}

namespace {

// Sum of the columns selected by a binary query, or a fresh zero.
Ciphertext binary_ip(const std::vector<std::size_t>& support, const std::vector<Ciphertext>& C,
                     const ahe::PublicScheme& pk, IpDbStats& stats) {
  if (support.empty()) {
    ++stats.zero_encryptions;
    return pk.encrypt_zero();
  }
  Ciphertext acc = C[support[0]];
  for (std::size_t i = 1; i < support.size(); ++i) {
    pk.add_inplace(acc, C[support[i]]);
    ++stats.raw_additions;
  }
  return acc;
}

}  // namespace

ScorePair idface_ip_db_ternary(const transform::TernaryTemplate& z, const EncryptedBatch& C,
                               const ahe::PublicScheme& pk, IpDbStats* stats) {
  if (z.dim() != C.dim()) fail(ErrorCode::kDimensionMismatch, "query and batch dimensions differ");
  const std::size_t bound = std::min(C.packing.alpha, z.k());
  if (bound + 1 > C.packing.p) {
    fail(ErrorCode::kParamMismatch, "query nonzero count " + std::to_string(z.k()) +
                                        " can carry past base " + std::to_string(C.packing.p));
  }
  IpDbStats local;
  const auto s = transform::split(z);
  const auto plus = s.plus.support();
  const auto minus = s.minus.support();
  ScorePair out;
  out.ct_plus = binary_ip(plus, C.c_plus, pk, local);
  pk.add_inplace(out.ct_plus, binary_ip(minus, C.c_minus, pk, local));
  out.ct_minus = binary_ip(plus, C.c_minus, pk, local);
  pk.add_inplace(out.ct_minus, binary_ip(minus, C.c_plus, pk, local));
  local.combine_additions = 2;
  if (stats) *stats = local;
  return out;
}

ScorePair idface_ip_db(const transform::FeatureTemplate& y, const EncryptedBatch& C, std::size_t beta,
                       const ahe::PublicScheme& pk, IpDbStats* stats) {
  return idface_ip_db_ternary(transform::ternarize(y, beta), C, pk, stats);
}

std::vector<std::int64_t> decode_scores(const ahe::Plaintext& plus, const ahe::Plaintext& minus,
                                        const packing::PackingParams& params, std::size_t valid_count) {
  if (plus.size() != minus.size()) fail(ErrorCode::kDimensionMismatch, "slot counts differ");
  if (valid_count > plus.size() * params.m) fail(ErrorCode::kRangeViolation, "more ids than positions");
  std::vector<std::int64_t> out;
  out.reserve(valid_count);
  const std::size_t used_slots = (valid_count + params.m - 1) / params.m;
  for (std::size_t j = 0; j < used_slots; ++j) {
    const auto scores = packing::decode(plus[j], minus[j], params);
    for (std::size_t i = 0; i < params.m && out.size() < valid_count; ++i) out.push_back(scores[i]);
  }
  return out;
}

std::uint64_t batch_count(std::uint64_t identities, const packing::PackingParams& params,
                          const ahe::BackendDescriptor& backend) {
  const std::uint64_t cap = static_cast<std::uint64_t>(params.m) * backend.slot_count;
  return (identities + cap - 1) / cap;
}

std::uint64_t encrypted_storage_bytes(std::uint64_t identities, const packing::PackingParams& params,
                                      const ahe::BackendDescriptor& backend, std::size_t d) {
  return 2 * batch_count(identities, params, backend) * d * backend.ciphertext_bytes;
}

}  // namespace idface::dbenc
