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

#include <gtest/gtest.h>

#include "idface/bigint.hpp"
#include "idface/bitvector.hpp"
#include "idface/error.hpp"
#include "idface/random.hpp"

namespace idface {
namespace {

BitVector bits(const std::string& s) {
  BitVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v.set(i, s[i] == '1');
  return v;
}

TEST(BitVector, BasicOps) {
  auto a = bits("10110");
  auto b = bits("01100");
  EXPECT_EQ(a.popcount(), 3u);
  EXPECT_EQ((a ^ b).to_string(), "11010");
  EXPECT_EQ((a & b).to_string(), "00100");
  EXPECT_EQ(a.and_popcount(b), 1u);
  EXPECT_FALSE(a.disjoint(b));
  EXPECT_TRUE(bits("1000").disjoint(bits("0110")));
  EXPECT_EQ(a.support(), (std::vector<std::size_t>{0, 2, 3}));
}

TEST(BitVector, ByteRoundtripAcrossWordBoundaries) {
  Rng rng(3);
  for (std::size_t n : {1u, 7u, 8u, 63u, 64u, 65u, 130u, 512u}) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng.coin());
    const auto bytes = v.to_bytes();
    EXPECT_EQ(bytes.size(), (n + 7) / 8);
    EXPECT_EQ(BitVector::from_bytes(bytes.data(), n), v);
  }
}

TEST(BitVector, SizeMismatchThrows) {
  BitVector a(10);
  BitVector b(11);
  EXPECT_THROW(a ^= b, Error);
}

TEST(BigInt, BytesAndHex) {
  const mpz_class v("123456789abcdef0123", 16);
  EXPECT_EQ(from_bytes(to_bytes(v).data(), to_bytes(v).size()), v);
  const auto fixed = to_bytes_fixed(v, 16);
  EXPECT_EQ(fixed.size(), 16u);
  EXPECT_EQ(fixed[0], 0);
  EXPECT_EQ(from_bytes(fixed.data(), fixed.size()), v);
  EXPECT_THROW(to_bytes_fixed(v, 4), Error);
  EXPECT_EQ(from_hex(to_hex(v)), v);
  EXPECT_EQ(to_bytes(mpz_class(0)).size(), 0u);
  EXPECT_EQ(bit_length(mpz_class(255)), 8u);
  EXPECT_EQ(bit_length(mpz_class(256)), 9u);
  try {
    from_hex("xyz");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedKey);
  }
}

TEST(BigInt, RandomBelowStaysInRange) {
  SeededRandomSource rng(5);
  const mpz_class bound(1000);
  bool seen_high = false;
  for (int i = 0; i < 2000; ++i) {
    const auto r = random_below(rng, bound);
    ASSERT_GE(r, 0);
    ASSERT_LT(r, bound);
    seen_high |= r > 900;
  }
  EXPECT_TRUE(seen_high);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(bit_length(random_bits(rng, 100)), 100u);
}

TEST(BigInt, FixedWidthIntegers) {
  std::vector<std::uint8_t> out;
  put_u32(out, 0x01020304);
  put_u64(out, 0x0102030405060708ULL);
  EXPECT_EQ(out[0], 1);
  EXPECT_EQ(out[3], 4);
  EXPECT_EQ(get_u32(out.data()), 0x01020304u);
  EXPECT_EQ(get_u64(out.data() + 4), 0x0102030405060708ULL);
}

TEST(Random, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(9, 4), derive_seed(9, 4));
}

}  // namespace
}  // namespace idface
