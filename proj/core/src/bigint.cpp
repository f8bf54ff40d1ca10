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

#include "idface/bigint.hpp"

#include "idface/error.hpp"

namespace idface {

std::vector<std::uint8_t> to_bytes(const mpz_class& v) {
  if (sgn(v) < 0) fail(ErrorCode::kInvalidArgument, "negative integer cannot be serialized");
  if (v == 0) return {};
  std::size_t count = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  std::vector<std::uint8_t> out(count);
  std::size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, v.get_mpz_t());
  out.resize(written);
  return out;
}

std::vector<std::uint8_t> to_bytes_fixed(const mpz_class& v, std::size_t width) {
  std::vector<std::uint8_t> raw = to_bytes(v);
  if (raw.size() > width) fail(ErrorCode::kOverflow, "integer wider than fixed field");
  std::vector<std::uint8_t> out(width - raw.size(), 0);
  out.insert(out.end(), raw.begin(), raw.end());
  return out;
}

mpz_class from_bytes(const std::uint8_t* data, std::size_t len) {
  mpz_class v;
  if (len > 0) mpz_import(v.get_mpz_t(), len, 1, 1, 1, 0, data);
  return v;
}

std::string to_hex(const mpz_class& v) { return v.get_str(16); }

mpz_class from_hex(const std::string& hex) {
  mpz_class v;
  if (hex.empty() || v.set_str(hex, 16) != 0) {
    fail(ErrorCode::kMalformedKey, "invalid hex integer");
  }
  return v;
}

std::size_t bit_length(const mpz_class& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

mpz_class random_bits(RandomSource& rng, std::size_t bits) {
  if (bits == 0) return 0;
  std::vector<std::uint8_t> buf((bits + 7) / 8);
  rng.fill(buf);
  const std::size_t excess = buf.size() * 8 - bits;
  buf[0] &= static_cast<std::uint8_t>(0xFFU >> excess);
  buf[0] |= static_cast<std::uint8_t>(0x80U >> excess);
  return from_bytes(buf.data(), buf.size());
}

mpz_class random_below(RandomSource& rng, const mpz_class& bound) {
  if (bound <= 0) fail(ErrorCode::kInvalidArgument, "random_below needs a positive bound");
  const std::size_t bits = bit_length(bound);
  std::vector<std::uint8_t> buf((bits + 7) / 8);
  const std::size_t excess = buf.size() * 8 - bits;
  for (;;) {
    rng.fill(buf);
    buf[0] &= static_cast<std::uint8_t>(0xFFU >> excess);
    mpz_class v = from_bytes(buf.data(), buf.size());
    if (v < bound) return v;
  }
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) |
         std::uint32_t{p[3]};
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
  return v;
}

}  // namespace idface
