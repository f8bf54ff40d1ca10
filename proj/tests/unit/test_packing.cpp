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

#include "idface/error.hpp"
#include "idface/packing.hpp"
#include "idface/random.hpp"
#include "idface/transform.hpp"

namespace idface::packing {
namespace {

using transform::TernaryTemplate;

// Plaintext version of the encrypted score pair.
std::pair<mpz_class, mpz_class> packed_scores(const PackedVector& xp, const PackedVector& xm,
                                              const TernaryTemplate& y) {
  mpz_class sp = 0;
  mpz_class sm = 0;
  for (std::size_t j = 0; j < y.dim(); ++j) {
    if (y[j] == 1) {
      sp += xp.entries[j];
      sm += xm.entries[j];
    } else if (y[j] == -1) {
      sp += xm.entries[j];
      sm += xp.entries[j];
    }
  }
  return {sp, sm};
}

TEST(Capacity, TableValues) {
  EXPECT_EQ(capacity(2048, 341, 63).m, 341u);
  EXPECT_EQ(capacity(2048, 341, 63).p, 64u);
  EXPECT_EQ(capacity(2048, 341, 127).m, 292u);
  EXPECT_EQ(capacity(2048, 341, 341).m, 227u);
  EXPECT_EQ(capacity(2048, 341, 341).p, 342u);
  EXPECT_EQ(capacity(50, 341, 63).m, 8u);
  EXPECT_EQ(capacity(50, 341, 127).m, 7u);
  EXPECT_EQ(capacity(50, 341, 341).m, 5u);
}

TEST(Capacity, MonotoneInBetaAndTooSmall) {
  std::size_t prev = capacity(2048, 341, 1).m;
  for (std::size_t beta = 2; beta <= 341; ++beta) {
    const auto m = capacity(2048, 341, beta).m;
    EXPECT_LE(m, prev);
    prev = m;
  }
  try {
    capacity(5, 341, 63);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacityTooSmall);
  }
}

PackingParams base8() { return PackingParams{7, 7, 8, 3, 2, 6}; }

TEST(Encode, HandExample) {
  const std::vector<TernaryTemplate> zs{TernaryTemplate({1, 0, -1}), TernaryTemplate({-1, 1, 0})};
  const auto [xp, xm] = encode(zs, base8());
  EXPECT_EQ(xp.entries, (std::vector<mpz_class>{1, 8, 0}));
  EXPECT_EQ(xm.entries, (std::vector<mpz_class>{8, 0, 1}));
  const auto [sp, sm] = packed_scores(xp, xm, TernaryTemplate({1, -1, 0}));
  EXPECT_EQ(sp, 1);
  EXPECT_EQ(sm, 16);
  EXPECT_EQ(decode(sp, sm, base8()), (std::vector<std::int64_t>{1, -2}));
}

TEST(Encode, SingleTemplateIsItsSplit) {
  auto params = capacity(64, 5, 5);
  params.m = 1;
  const TernaryTemplate z({1, -1, 0, 1, 0});
  const auto [xp, xm] = encode({z}, params);
  EXPECT_EQ(xp.entries, (std::vector<mpz_class>{1, 0, 0, 1, 0}));
  EXPECT_EQ(xm.entries, (std::vector<mpz_class>{0, 1, 0, 0, 0}));
}

TEST(Encode, Errors) {
  const auto params = base8();
  const TernaryTemplate a({1, 0, 0});
  auto code_of = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code_of([&] { encode({a, a, a}, params); }), ErrorCode::kTooManyTemplates);
  EXPECT_EQ(code_of([&] { encode({a, TernaryTemplate({1, 0})}, params); }), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([&] { decode(mpz_class(64), 0, params); }), ErrorCode::kOverflow);
}

TEST(Decode, ZeroAndDigitRoundtrip) {
  EXPECT_EQ(decode(0, 0, base8()), (std::vector<std::int64_t>{0, 0}));
  Rng rng(31);
  const auto params = capacity(2048, 341, 63);
  for (int t = 0; t < 1000; ++t) {
    std::vector<TernaryTemplate> zs;
    const std::size_t count = 1 + rng.next_u64() % 20;
    for (std::size_t i = 0; i < count; ++i) zs.push_back(transform::ternarize(transform::random_unit(16, rng), 10));
    const auto [xp, xm] = encode(zs, params);
    for (std::size_t i = 0; i < count; ++i) {
      const auto s = transform::split(zs[i]);
      for (std::size_t j = 0; j < 16; ++j) {
        ASSERT_EQ(extract_digit(xp.entries[j], i, params), s.plus.get(j) ? 1u : 0u);
        ASSERT_EQ(extract_digit(xm.entries[j], i, params), s.minus.get(j) ? 1u : 0u);
      }
    }
  }
}

TEST(Decode, ScoresMatchPlaintextInnerProducts) {
  Rng rng(32);
  const auto params = capacity(2048, 341, 63);
  for (int t = 0; t < 1000; ++t) {
    std::vector<TernaryTemplate> zs;
    for (std::size_t i = 0; i < 12; ++i) zs.push_back(transform::ternarize(transform::random_unit(512, rng), 341));
    const auto y = transform::ternarize(transform::random_unit(512, rng), 63);
    const auto [xp, xm] = encode(zs, params);
    const auto [sp, sm] = packed_scores(xp, xm, y);
    const auto scores = decode(sp, sm, params);
    for (std::size_t i = 0; i < zs.size(); ++i) ASSERT_EQ(scores[i], transform::ternary_inner(zs[i], y));
    for (std::size_t i = zs.size(); i < params.m; ++i) ASSERT_EQ(scores[i], 0);
  }
}

// Every ternary vector of dimension 4 (80 of them), every ordered pair as a
// two-template batch, every query: digits never carry.
TEST(Decode, ExhaustiveNoCarry) {
  std::vector<TernaryTemplate> all;
  for (int code = 0; code < 81; ++code) {
    std::vector<std::int8_t> v(4);
    int c = code;
    for (auto& e : v) {
      e = static_cast<std::int8_t>(c % 3 - 1);
      c /= 3;
    }
    if (std::any_of(v.begin(), v.end(), [](auto e) { return e != 0; })) all.emplace_back(v);
  }
  ASSERT_EQ(all.size(), 80u);
  const auto params = capacity(64, 4, 4);
  ASSERT_EQ(params.p, 5u);
  std::size_t checked = 0;
  for (const auto& a : all) {
    for (const auto& b : all) {
      const auto [xp, xm] = encode({a, b}, params);
      for (const auto& y : all) {
        const auto [sp, sm] = packed_scores(xp, xm, y);
        const auto s = decode(sp, sm, params);
        ASSERT_EQ(s[0], transform::ternary_inner(a, y));
        ASSERT_EQ(s[1], transform::ternary_inner(b, y));
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 80u * 80u * 80u);
}

TEST(Serialize, Roundtrip) {
  Rng rng(33);
  const auto params = capacity(2048, 341, 63);
  std::vector<TernaryTemplate> zs;
  for (int i = 0; i < 5; ++i) zs.push_back(transform::ternarize(transform::random_unit(64, rng), 30));
  const auto [xp, xm] = encode(zs, params);
  const auto bytes = serialize(xp);
  EXPECT_EQ(deserialize(bytes.data(), bytes.size()), xp);
  EXPECT_THROW(deserialize(bytes.data(), bytes.size() - 1), Error);
}

}  // namespace
}  // namespace idface::packing
