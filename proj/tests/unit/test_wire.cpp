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
#include "idface/protocol/wire.hpp"
#include "idface/random.hpp"

namespace idface::protocol {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

std::vector<std::uint8_t> random_bytes(Rng& rng, std::size_t max) {
  std::vector<std::uint8_t> v(rng.next_u64() % (max + 1));
  for (auto& b : v) b = static_cast<std::uint8_t>(rng.next_u64());
  return v;
}

BitVector random_bits(Rng& rng, std::size_t n) {
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, rng.coin());
  return v;
}

std::string random_text(Rng& rng) {
  std::string s(rng.next_u64() % 20, 'a');
  for (auto& c : s) c = static_cast<char>('a' + rng.next_u64() % 26);
  return s;
}

Message random_message(Rng& rng) {
  switch (rng.next_u64() % 9) {
    case 0: {
      ScoreBatchRequest r{static_cast<std::int64_t>(rng.next_u64() % 1000) - 500, rng.next_u64() % 1000,
                          static_cast<std::uint32_t>(rng.next_u64() % 400), {}};
      for (std::size_t i = rng.next_u64() % 4; i > 0; --i) {
        r.batches.push_back({static_cast<std::uint32_t>(rng.next_u64()), random_bytes(rng, 64), random_bytes(rng, 64)});
      }
      return r;
    }
    case 1: {
      // A reject carries no indices on the wire.
      const bool accept = rng.coin();
      if (!accept) return IdxResponse{};
      return IdxResponse{true, static_cast<std::uint32_t>(rng.next_u64()), static_cast<std::uint32_t>(rng.next_u64())};
    }
    case 2: {
      const std::size_t n = 1 + rng.next_u64() % 100;
      return EnrollBroadcast{random_text(rng), random_bits(rng, n), random_bits(rng, n)};
    }
    case 3:
      return ErrorResponse{static_cast<ErrorCode>(rng.next_u64() % 21), random_text(rng)};
    case 4: {
      IdentifyRequest r{rng.uniform01(), {}};
      for (std::size_t i = rng.next_u64() % 20; i > 0; --i) r.features.push_back(rng.gaussian());
      return r;
    }
    case 5:
      return IdentifyReply{rng.coin(), random_text(rng)};
    case 6: {
      const std::size_t n = 1 + rng.next_u64() % 100;
      return TwoPcQuery{random_bits(rng, n), random_bits(rng, n)};
    }
    case 7: {
      TwoPcShares s{static_cast<std::uint32_t>(1 + rng.next_u64() % 70), {}};
      for (std::size_t i = rng.next_u64() % 5; i > 0; --i) s.rows.push_back(random_bits(rng, s.bits_per_identity));
      return s;
    }
    default:
      return TwoPcAck{static_cast<std::uint32_t>(rng.next_u64())};
  }
}

TEST(Wire, RandomRoundtrip) {
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const auto msg = random_message(rng);
    const auto frame = wire_encode(msg);
    ASSERT_EQ(wire_decode(frame), msg);
  }
}

TEST(Wire, RejectFrameLayout) {
  const auto frame = wire_encode(IdxResponse{});
  ASSERT_EQ(frame.size(), 14u);
  EXPECT_EQ(std::string(frame.begin(), frame.begin() + 4), "IDF1");
  EXPECT_EQ(frame[4], 0x02);
  for (int i = 5; i < 12; ++i) EXPECT_EQ(frame[i], 0);
  EXPECT_EQ(frame[12], 1);
  EXPECT_EQ(frame[13], 0);
}

TEST(Wire, AcceptFrameCarriesIndices) {
  const auto frame = wire_encode(IdxResponse{true, 2, 7});
  ASSERT_EQ(frame.size(), 13u + 9u);
  EXPECT_EQ(frame[13], 1);
}

TEST(Wire, MalformedInputs) {
  auto frame = wire_encode(IdentifyReply{true, "alice"});
  EXPECT_EQ(code_of([&] { wire_decode(frame.data(), frame.size() - 1); }), ErrorCode::kMalformedFrame);
  EXPECT_EQ(code_of([&] { wire_decode(frame.data(), 5); }), ErrorCode::kMalformedFrame);
  auto bad_magic = frame;
  bad_magic[0] = 'X';
  EXPECT_EQ(code_of([&] { wire_decode(bad_magic); }), ErrorCode::kMalformedFrame);
  auto bad_type = frame;
  bad_type[4] = 0x7f;
  EXPECT_EQ(code_of([&] { wire_decode(bad_type); }), ErrorCode::kUnknownMessageType);
  // Declared payload longer than its contents need.
  auto padded = frame;
  padded.push_back(0);
  padded[12] = static_cast<std::uint8_t>(padded[12] + 1);
  EXPECT_EQ(code_of([&] { wire_decode(padded); }), ErrorCode::kLengthMismatch);
}

TEST(Wire, ExpectOkRaisesCarriedError) {
  EXPECT_EQ(code_of([] { expect_ok(ErrorResponse{ErrorCode::kParamMismatch, "x"}); }), ErrorCode::kParamMismatch);
  EXPECT_NO_THROW(expect_ok(TwoPcAck{1}));
}

}  // namespace
}  // namespace idface::protocol
