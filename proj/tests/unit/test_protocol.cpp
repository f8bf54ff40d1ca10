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

#include <cmath>
#include <thread>

#include "idface/ahe/keyfile.hpp"
#include "idface/bigint.hpp"
#include "idface/error.hpp"
#include "idface/protocol/roles.hpp"
#include "idface/protocol/transport.hpp"
#include "test_support.hpp"

namespace idface::protocol {
namespace {

using transform::FeatureTemplate;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

FeatureTemplate noisy(const FeatureTemplate& x, double sigma, Rng& rng) {
  std::vector<double> v = x.values();
  for (auto& e : v) e += sigma * rng.gaussian();
  return FeatureTemplate(v).normalized();
}

TEST(Threshold, CeilingWithGuard) {
  EXPECT_EQ(threshold_int(0.5, 4, 4), 2);
  EXPECT_EQ(threshold_int(1.0, 341, 341), 341);
  EXPECT_EQ(threshold_int(0.5, 341, 63), 74);
  EXPECT_EQ(threshold_int(0.0, 341, 63), 0);
  EXPECT_EQ(threshold_int(-0.5, 4, 4), -2);
  EXPECT_EQ(code_of([] { threshold_int(1.5, 4, 4); }), ErrorCode::kInvalidArgument);
}

struct Roles {
  testing::TestScheme s;
  packing::PackingParams params;
  std::unique_ptr<LocalServer> local;
  std::unique_ptr<KeyServer> key;
  std::unique_ptr<InProcessLink> link;
};

Roles make_roles(std::size_t key_bits, std::size_t alpha, std::size_t beta, std::size_t d, std::uint64_t seed) {
  Roles r;
  const auto& kp = testing::test_key(key_bits);
  r.s = testing::make_scheme(kp, ahe::default_layout(kp.pub), seed, ahe::EncryptionMode::kFixedBase);
  r.params = packing::capacity(key_bits, alpha, beta);
  r.local = std::make_unique<LocalServer>(r.s.pub, r.params, d, 1);
  r.key = std::make_unique<KeyServer>(r.s.sec, r.params);
  r.link = std::make_unique<InProcessLink>(r.key->handler());
  return r;
}

TEST(LocalServer, BatchingRule) {
  auto r = make_roles(64, 4, 4, 8, 1);
  const std::size_t cap = r.params.m;
  Rng rng(2);
  r.local->enroll(testing::random_templates(1, 8, rng), {"first"});
  EXPECT_EQ(r.local->batch_count(), 1u);
  r.local->enroll(testing::random_templates(cap + 1, 8, rng), testing::make_ids(cap + 1));
  EXPECT_EQ(r.local->batch_count(), 3u);
  EXPECT_EQ(r.local->identity_count(), cap + 2);
  EXPECT_EQ(code_of([&] { r.local->enroll(testing::random_templates(1, 8, rng), {"first"}); }),
            ErrorCode::kDuplicateId);
  EXPECT_EQ(code_of([&] { r.local->enroll(testing::random_templates(2, 8, rng), {"dup", "dup"}); }),
            ErrorCode::kDuplicateId);
  EXPECT_EQ(code_of([&] { r.local->enroll(testing::random_templates(1, 9, rng), {"wide"}); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(r.local->identity_count(), cap + 2);
}

TEST(LocalServer, EmptyDatabaseIsAnError) {
  auto r = make_roles(64, 4, 4, 8, 3);
  Rng rng(4);
  EXPECT_EQ(code_of([&] { r.local->identify(transform::random_unit(8, rng), 0.5, *r.link); }),
            ErrorCode::kInvalidArgument);
}

TEST(Identify, SelfMatchAndUnreachableThreshold) {
  auto r = make_roles(256, 20, 20, 32, 5);
  Rng rng(6);
  const auto X = testing::random_templates(10, 32, rng);
  r.local->enroll(X, testing::make_ids(10));
  for (std::size_t i = 0; i < 10; ++i) {
    const auto m = r.local->identify(X[i], 0.5, *r.link);
    EXPECT_TRUE(m.accepted);
    EXPECT_EQ(m.id, "user" + std::to_string(i));
  }
  // tau = 1 needs a score above alpha; even a perfect match stops at alpha.
  EXPECT_FALSE(r.local->identify(X[0], 1.0, *r.link).accepted);
}

TEST(Identify, MatchesPlaintextPipeline) {
  auto r = make_roles(512, 341, 63, 512, 7);
  Rng rng(8);
  const auto X = testing::random_templates(100, 512, rng);
  const auto ids = testing::make_ids(100);
  r.local->enroll(X, ids);
  ASSERT_EQ(r.local->batch_count(), 2u);
  std::vector<transform::TernaryTemplate> Z;
  for (const auto& x : X) Z.push_back(transform::ternarize(x, 341));
  const double tau = 0.3;
  std::size_t accepted = 0;
  for (int t = 0; t < 100; ++t) {
    const auto y = noisy(X[static_cast<std::size_t>(t)], 0.05, rng);
    const auto got = r.local->identify(y, tau, *r.link);
    const auto want = reference_identify(Z, ids, y, 341, 63, tau, r.params.m).match;
    ASSERT_EQ(got.accepted, want.accepted) << t;
    ASSERT_EQ(got.id, want.id) << t;
    ASSERT_EQ(got.batch, want.batch) << t;
    ASSERT_EQ(got.position, want.position) << t;
    accepted += got.accepted ? 1 : 0;
  }
  // The threshold splits the noisy queries, so both branches are exercised.
  EXPECT_GT(accepted, 0u);
}

TEST(Identify, TiesGoToLowestPosition) {
  auto r = make_roles(256, 8, 8, 16, 9);
  Rng rng(10);
  const auto x = transform::random_unit(16, rng);
  r.local->enroll({x, x, x}, {"a", "b", "c"});
  const auto m = r.local->identify(x, 0.5, *r.link);
  EXPECT_TRUE(m.accepted);
  EXPECT_EQ(m.id, "a");
  EXPECT_EQ(m.position, 0u);
}

TEST(Identify, TcpAndInProcessAgree) {
  auto r = make_roles(256, 20, 10, 32, 11);
  Rng rng(12);
  const auto X = testing::random_templates(30, 32, rng);
  r.local->enroll(X, testing::make_ids(30));
  TcpServer server(parse_endpoint("127.0.0.1:0"), r.key->handler());
  TcpLink tcp(Endpoint{"127.0.0.1", server.port()});
  auto transcript = std::make_shared<Transcript>();
  tcp.set_transcript(transcript);
  for (int t = 0; t < 20; ++t) {
    const auto y = t % 2 ? X[static_cast<std::size_t>(t)] : transform::random_unit(32, rng);
    EXPECT_EQ(r.local->identify(y, 0.4, tcp), r.local->identify(y, 0.4, *r.link));
  }
  EXPECT_EQ(transcript->entries().size(), 40u);
  EXPECT_GT(transcript->bytes(true), transcript->bytes(false));
  server.stop();
}

TEST(Identify, KeyServerChecksPacking) {
  auto r = make_roles(256, 20, 10, 32, 13);
  Rng rng(14);
  r.local->enroll(testing::random_templates(3, 32, rng), testing::make_ids(3));
  KeyServer strict(r.s.sec, packing::capacity(256, 20, 20));
  InProcessLink link(strict.handler());
  EXPECT_EQ(code_of([&] { r.local->identify(transform::random_unit(32, rng), 0.5, link); }),
            ErrorCode::kParamMismatch);
}

TEST(Identify, IdentifyRequestThroughLocalServer) {
  auto r = make_roles(256, 20, 20, 32, 15);
  Rng rng(16);
  const auto X = testing::random_templates(5, 32, rng);
  r.local->enroll(X, testing::make_ids(5));
  InProcessLink client([&](const Message& m) { return r.local->handle_message(m, *r.link); });
  const auto reply = std::get<IdentifyReply>(expect_ok(client.call(IdentifyRequest{0.5, X[3].values()})));
  EXPECT_TRUE(reply.accept);
  EXPECT_EQ(reply.id, "user3");
  const auto err = client.call(TwoPcAck{1});
  EXPECT_TRUE(std::holds_alternative<ErrorResponse>(err));
}

TEST(LocalServer, StateHoldsNoSecretMaterial) {
  auto r = make_roles(256, 20, 20, 32, 17);
  Rng rng(18);
  r.local->enroll(testing::random_templates(5, 32, rng), testing::make_ids(5));
  const auto summary = r.local->state_summary();
  const auto& sk = testing::test_key(256).sec;
  for (const auto& secret : {sk.lambda, sk.mu, sk.p, sk.q}) {
    EXPECT_EQ(summary.find(to_hex(secret)), std::string::npos);
    EXPECT_EQ(summary.find(secret.get_str()), std::string::npos);
  }
  EXPECT_FALSE(summary.empty());
}

TEST(LocalServer, ConcurrentEnrollAndIdentify) {
  auto r = make_roles(256, 20, 20, 32, 19);
  Rng rng(20);
  const auto X = testing::random_templates(40, 32, rng);
  r.local->enroll({X[0]}, {"seed"});
  std::thread writer([&] {
    for (std::size_t i = 1; i < 40; ++i) r.local->enroll({X[i]}, {"w" + std::to_string(i)});
  });
  for (int t = 0; t < 20; ++t) {
    const auto m = r.local->identify(X[0], 0.5, *r.link);
    EXPECT_TRUE(m.accepted);
    EXPECT_EQ(m.id, "seed");
  }
  writer.join();
  EXPECT_EQ(r.local->identity_count(), 40u);
}

TEST(Transport, ErrorsAndEndpoints) {
  EXPECT_EQ(parse_endpoint("127.0.0.1:80").port, 80);
  EXPECT_THROW(parse_endpoint("nocolon"), Error);
  EXPECT_EQ(code_of([] { TcpLink link(Endpoint{"127.0.0.1", 1}); }), ErrorCode::kTransportFailure);
}

}  // namespace
}  // namespace idface::protocol
