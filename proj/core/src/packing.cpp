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

#include "idface/packing.hpp"

#include <algorithm>
#include <string>

#include "idface/bigint.hpp"
#include "idface/error.hpp"

namespace idface::packing {

mpz_class PackingParams::value_bound() const {
  mpz_class b = 1;
  mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), digit_bits * m);
  return b;
}

std::size_t ceil_log2(std::uint64_t v) {
  std::size_t bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < v) ++bits;
  return bits;
}

PackingParams capacity(std::size_t slot_bits, std::size_t alpha, std::size_t beta) {
  if (alpha == 0 || beta == 0) fail(ErrorCode::kInvalidArgument, "nonzero counts must be positive");
  PackingParams pp;
  pp.alpha = alpha;
  pp.beta = beta;
  pp.p = std::min(alpha, beta) + 1;
  pp.digit_bits = std::max<std::size_t>(1, ceil_log2(pp.p));
  pp.slot_bits = slot_bits;
  pp.m = slot_bits / pp.digit_bits;
  if (pp.m == 0) {
    fail(ErrorCode::kCapacityTooSmall, std::to_string(slot_bits) + "-bit slot cannot hold a base-" +
                                           std::to_string(pp.p) + " digit");
  }
  return pp;
}

std::pair<PackedVector, PackedVector> encode(const std::vector<transform::TernaryTemplate>& templates,
                                             const PackingParams& params) {
  if (templates.size() > params.m) {
    fail(ErrorCode::kTooManyTemplates, std::to_string(templates.size()) + " templates exceed capacity " +
                                           std::to_string(params.m));
  }
  if (templates.empty()) fail(ErrorCode::kInvalidArgument, "nothing to encode");
  const std::size_t d = templates.front().dim();
  PackedVector plus{std::vector<mpz_class>(d)};
  PackedVector minus{std::vector<mpz_class>(d)};
  for (std::size_t i = 0; i < templates.size(); ++i) {
    const auto& z = templates[i];
    if (z.dim() != d) fail(ErrorCode::kDimensionMismatch, "templates in a batch differ in dimension");
    if (z.k() > params.alpha) {
      fail(ErrorCode::kRangeViolation, "template has more than alpha nonzero entries");
    }
    const std::size_t shift = i * params.digit_bits;
    for (std::size_t j = 0; j < d; ++j) {
      if (z[j] > 0) mpz_setbit(plus.entries[j].get_mpz_t(), shift);
      if (z[j] < 0) mpz_setbit(minus.entries[j].get_mpz_t(), shift);
    }
  }
  return {std::move(plus), std::move(minus)};
}

std::uint64_t extract_digit(const mpz_class& value, std::size_t index, const PackingParams& params) {
  mpz_class t;
  mpz_fdiv_q_2exp(t.get_mpz_t(), value.get_mpz_t(), index * params.digit_bits);
  mpz_fdiv_r_2exp(t.get_mpz_t(), t.get_mpz_t(), params.digit_bits);
  return t.get_ui();
}

std::vector<std::int64_t> decode(const mpz_class& s_plus, const mpz_class& s_minus,
                                 const PackingParams& params) {
  const mpz_class bound = params.value_bound();
  if (sgn(s_plus) < 0 || sgn(s_minus) < 0 || s_plus >= bound || s_minus >= bound) {
    fail(ErrorCode::kOverflow, "packed score outside [0, 2^(digit_bits*m))");
  }
  std::vector<std::int64_t> out(params.m);
  mpz_class rest_plus = s_plus;
  mpz_class rest_minus = s_minus;
  mpz_class dp;
  mpz_class dm;
  for (std::size_t i = 0; i < params.m; ++i) {
    mpz_fdiv_r_2exp(dp.get_mpz_t(), rest_plus.get_mpz_t(), params.digit_bits);
    mpz_fdiv_r_2exp(dm.get_mpz_t(), rest_minus.get_mpz_t(), params.digit_bits);
    const std::uint64_t a = dp.get_ui();
    const std::uint64_t b = dm.get_ui();
    if (a >= params.p || b >= params.p) {
      fail(ErrorCode::kOverflow, "digit " + std::to_string(i) + " exceeds the base");
    }
    out[i] = static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b);
    mpz_fdiv_q_2exp(rest_plus.get_mpz_t(), rest_plus.get_mpz_t(), params.digit_bits);
    mpz_fdiv_q_2exp(rest_minus.get_mpz_t(), rest_minus.get_mpz_t(), params.digit_bits);
  }
  return out;
}

std::vector<std::uint8_t> serialize(const PackedVector& v) {
  std::vector<std::uint8_t> out;
  put_u32(out, static_cast<std::uint32_t>(v.entries.size()));
  for (const auto& e : v.entries) {
    const auto bytes = to_bytes(e);
    put_u32(out, static_cast<std::uint32_t>(bytes.size()));
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  return out;
}

PackedVector deserialize(const std::uint8_t* data, std::size_t len) {
  if (len < 4) fail(ErrorCode::kMalformedFrame, "packed vector truncated");
  const std::uint32_t count = get_u32(data);
  std::size_t pos = 4;
  PackedVector v;
  v.entries.reserve(std::min<std::size_t>(count, len / 4));
  for (std::uint32_t i = 0; i < count; ++i) {
    if (len - pos < 4) fail(ErrorCode::kMalformedFrame, "packed vector truncated");
    const std::uint32_t n = get_u32(data + pos);
    pos += 4;
    if (len - pos < n) fail(ErrorCode::kMalformedFrame, "packed vector truncated");
    v.entries.push_back(from_bytes(data + pos, n));
    pos += n;
  }
  if (pos != len) fail(ErrorCode::kLengthMismatch, "trailing bytes after packed vector");
  return v;
}

}  // namespace idface::packing
