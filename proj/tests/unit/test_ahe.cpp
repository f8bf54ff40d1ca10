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

#include <sys/stat.h>

#include <set>

#include "idface/ahe/keyfile.hpp"
#include "idface/ahe/paillier.hpp"
#include "idface/ahe/simulated_simd.hpp"
#include "idface/bigint.hpp"
#include "idface/error.hpp"
#include "test_support.hpp"

namespace idface::ahe {
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

mpz_class single(const Plaintext& p) { return p.at(0); }

TEST(Paillier, TinyKeyHandValues) {
  const auto kp = paillier_from_primes(5, 7);
  EXPECT_EQ(kp.pub.n, 35);
  EXPECT_EQ(kp.pub.n_squared, 1225);
  const auto s = testing::make_scheme(kp, default_layout(kp.pub), 1);
  EXPECT_EQ(single(s.sec->decrypt(s.pub->encrypt({3}))), 3);
  EXPECT_EQ(single(s.sec->decrypt(s.pub->add(s.pub->encrypt({3}), s.pub->encrypt({4})))), 7);
  // (1 + 3n) 2^n mod n^2 and (1 + 4n) 3^n mod n^2, computed independently.
  const auto c3 = s.pub->from_bytes(to_bytes_fixed(mpz_class(683), 2).data(), 2);
  const auto c4 = s.pub->from_bytes(to_bytes_fixed(mpz_class(1062), 2).data(), 2);
  EXPECT_EQ(single(s.sec->decrypt(c3)), 3);
  EXPECT_EQ(single(s.sec->decrypt(c4)), 4);
}

TEST(Paillier, KnownAnswerDecryption) {
  const auto kp = paillier_from_primes(1000003, 1000033);
  const auto s = testing::make_scheme(kp, default_layout(kp.pub), 2);
  const mpz_class c("687491236425761097824740", 10);
  const auto bytes = to_bytes_fixed(c, s.pub->descriptor().ciphertext_bytes);
  EXPECT_EQ(single(s.sec->decrypt(s.pub->from_bytes(bytes.data(), bytes.size()))), 123456789);
}

TEST(Paillier, KeygenSizesAndSeeds) {
  const auto& kp = testing::test_key(2048);
  EXPECT_EQ(kp.pub.modulus_bits(), 2048u);
  EXPECT_EQ(kp.sec.p * kp.sec.q, kp.pub.n);
  SeededRandomSource r1(1);
  SeededRandomSource r2(2);
  EXPECT_NE(paillier_keygen(256, r1).pub.n, paillier_keygen(256, r2).pub.n);
  SeededRandomSource r3(1);
  SeededRandomSource r4(1);
  EXPECT_EQ(paillier_keygen(256, r3).pub.n, paillier_keygen(256, r4).pub.n);
  SeededRandomSource r5(5);
  EXPECT_EQ(code_of([&] { paillier_keygen(256, r5, 0); }), ErrorCode::kPrimeGenerationFailure);
}

TEST(Paillier, DescriptorOfFullSizeKey) {
  const auto& kp = testing::test_key(2048);
  const auto s = testing::make_scheme(kp, default_layout(kp.pub), 3);
  const auto d = s.pub->descriptor();
  EXPECT_EQ(d.slot_count, 1u);
  EXPECT_EQ(d.slot_bits, 2048u);
  EXPECT_EQ(d.ciphertext_bytes, 512u);
  EXPECT_EQ(s.pub->to_fixed_bytes(s.pub->encrypt({5})).size(), 512u);
}

class PaillierModes : public ::testing::TestWithParam<EncryptionMode> {};

TEST_P(PaillierModes, HomomorphismsHold) {
  const auto& kp = testing::test_key(512);
  const auto s = testing::make_scheme(kp, default_layout(kp.pub), 4, GetParam());
  SeededRandomSource rng(6);
  const mpz_class half = kp.pub.n / 2;
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_below(rng, half);
    const auto b = random_below(rng, half);
    ASSERT_EQ(single(s.sec->decrypt(s.pub->add(s.pub->encrypt({a}), s.pub->encrypt({b})))), a + b);
  }
  for (int t = 0; t < 200; ++t) {
    const auto a = random_below(rng, mpz_class(1) << 400);
    const auto c = random_below(rng, mpz_class(1) << 16);
    ASSERT_EQ(single(s.sec->decrypt(s.pub->scalar_mul(c, s.pub->encrypt({a})))), (c * a) % kp.pub.n);
  }
  const auto ca = s.pub->encrypt({11});
  const auto cb = s.pub->encrypt({22});
  const auto cc = s.pub->encrypt({33});
  EXPECT_EQ(s.sec->decrypt(s.pub->add(s.pub->add(ca, cb), cc)), s.sec->decrypt(s.pub->add(ca, s.pub->add(cb, cc))));
  EXPECT_EQ(s.sec->decrypt(s.pub->scalar_mul(1, ca)), s.sec->decrypt(ca));
  EXPECT_EQ(single(s.sec->decrypt(s.pub->encrypt_zero())), 0);
}

TEST_P(PaillierModes, EncryptionIsRandomized) {
  const auto& kp = testing::test_key(512);
  const auto s = testing::make_scheme(kp, default_layout(kp.pub), 7, GetParam());
  std::set<std::vector<std::uint8_t>> seen;
  for (int t = 0; t < 100; ++t) seen.insert(s.pub->to_fixed_bytes(s.pub->encrypt({42})));
  EXPECT_EQ(seen.size(), 100u);
}

INSTANTIATE_TEST_SUITE_P(All, PaillierModes,
                         ::testing::Values(EncryptionMode::kStandard, EncryptionMode::kFixedBase));

TEST(Paillier, DecryptionWithoutFactorsAgrees) {
  const auto& kp = testing::test_key(512);
  const auto s = testing::make_scheme(kp, default_layout(kp.pub), 8);
  auto bare = kp.sec;
  bare.p = 0;
  bare.q = 0;
  PaillierSecret plain(bare, s.pub);
  for (int t = 0; t < 20; ++t) {
    const auto ct = s.pub->encrypt({mpz_class(t * 1234567)});
    EXPECT_EQ(plain.decrypt(ct), s.sec->decrypt(ct));
  }
}

TEST(Paillier, SlotLayoutPacksSlots) {
  const auto& kp = testing::test_key(64);
  const auto s = testing::make_scheme(kp, SlotLayout{4, 10}, 9);
  EXPECT_EQ(s.pub->descriptor().slot_count, 4u);
  const auto ct = s.pub->add(s.pub->encrypt({1, 2, 3, 4}), s.pub->encrypt({10, 20, 30, 40}));
  EXPECT_EQ(s.sec->decrypt(ct), (Plaintext{11, 22, 33, 44}));
  EXPECT_EQ(code_of([&] { s.pub->encrypt({1024, 0, 0, 0}); }), ErrorCode::kSlotOverflow);
  EXPECT_EQ(code_of([&] { testing::make_scheme(kp, SlotLayout{8, 10}, 9); }), ErrorCode::kSlotOverflow);
}

TEST(Paillier, KeyMismatchAndBadBytes) {
  const auto a = testing::make_scheme(testing::test_key(256), default_layout(testing::test_key(256).pub), 10);
  const auto b = testing::make_scheme(testing::test_key(512), default_layout(testing::test_key(512).pub), 11);
  EXPECT_EQ(code_of([&] { a.pub->add(a.pub->encrypt({1}), b.pub->encrypt({1})); }), ErrorCode::kKeyMismatch);
  std::vector<std::uint8_t> junk(a.pub->descriptor().ciphertext_bytes, 0xff);
  EXPECT_THROW(a.pub->from_bytes(junk.data(), junk.size()), Error);
}

TEST(Paillier, WireBytesRoundtrip) {
  const auto& kp = testing::test_key(256);
  const auto s = testing::make_scheme(kp, default_layout(kp.pub), 12);
  const auto ct = s.pub->encrypt({77});
  const auto wire = s.pub->to_wire_bytes(ct);
  EXPECT_LE(wire.size(), s.pub->descriptor().ciphertext_bytes);
  EXPECT_EQ(single(s.sec->decrypt(s.pub->from_bytes(wire.data(), wire.size()))), 77);
}

TEST(KeyFile, RoundtripAndPermissions) {
  const auto& kp = testing::test_key(256);
  const auto dir = testing::temp_dir("keys");
  write_secret_key(dir + "/k.sec", kp.sec);
  write_public_key(dir + "/k.pub", kp.pub);
  const auto sk = read_secret_key(dir + "/k.sec");
  EXPECT_EQ(sk.n, kp.sec.n);
  EXPECT_EQ(sk.lambda, kp.sec.lambda);
  EXPECT_EQ(sk.mu, kp.sec.mu);
  EXPECT_EQ(read_public_key(dir + "/k.pub").n, kp.pub.n);
  struct stat st {};
  ASSERT_EQ(::stat((dir + "/k.sec").c_str(), &st), 0);
  EXPECT_EQ(st.st_mode & 0777, 0600u);
  EXPECT_EQ(code_of([] { parse_public_key("not a key"); }), ErrorCode::kMalformedKey);
  auto text = format_secret_key(kp.sec);
  text.replace(text.find("mu ") + 3, 1, text[text.find("mu ") + 3] == '1' ? "2" : "1");
  EXPECT_EQ(code_of([&] { parse_secret_key(text); }), ErrorCode::kMalformedKey);
}

TEST(SimulatedSimd, RequiresInsecureMode) {
  EXPECT_EQ(code_of([] { SimulatedSimd::create(""); }), ErrorCode::kInsecureModeRequired);
  EXPECT_EQ(code_of([] { SimulatedSimd::create("secure"); }), ErrorCode::kInsecureModeRequired);
  EXPECT_NO_THROW(SimulatedSimd::create(kInsecureMockMode));
}

TEST(SimulatedSimd, SlotwiseArithmeticAndAccounting) {
  auto mock = SimulatedSimd::create(kInsecureMockMode);
  const auto d = mock->descriptor();
  EXPECT_EQ(d.slot_count, 4096u);
  EXPECT_EQ(d.slot_bits, 50u);
  EXPECT_EQ(d.ciphertext_bytes, 135168u);
  Plaintext a(4096);
  Plaintext ones(4096, 1);
  for (std::size_t i = 0; i < 4096; ++i) a[i] = i + 1;
  const auto sum = mock->decrypt(mock->add(mock->encrypt(a), mock->encrypt(ones)));
  for (std::size_t i = 0; i < 4096; ++i) ASSERT_EQ(sum[i], i + 2);
  EXPECT_EQ(mock->to_fixed_bytes(mock->encrypt(a)).size(), 135168u);
  Plaintext big(4096, 0);
  big[7] = mpz_class(1) << 50;
  EXPECT_EQ(code_of([&] { mock->encrypt(big); }), ErrorCode::kSlotOverflow);
  const auto bytes = mock->to_fixed_bytes(mock->encrypt(a));
  EXPECT_EQ(mock->decrypt(mock->from_bytes(bytes.data(), bytes.size())), a);
}

TEST(Counters, CountOperations) {
  const auto& kp = testing::test_key(256);
  const auto s = testing::make_scheme(kp, default_layout(kp.pub), 13);
  s.pub->counters().reset();
  auto c = s.pub->encrypt({1});
  s.pub->add_inplace(c, s.pub->encrypt({2}));
  s.pub->scalar_mul(3, c);
  const auto snap = s.pub->counters().snapshot();
  EXPECT_EQ(snap.encryptions, 2u);
  EXPECT_EQ(snap.additions, 1u);
  EXPECT_EQ(snap.scalar_muls, 1u);
  EXPECT_EQ(snap.rotations, 0u);
}

}  // namespace
}  // namespace idface::ahe
