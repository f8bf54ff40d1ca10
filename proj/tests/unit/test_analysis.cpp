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
#include <numbers>

#include "idface/analysis.hpp"
#include "idface/dbenc.hpp"
#include "idface/error.hpp"

namespace idface::analysis {
namespace {

// Reference values computed independently with scipy (double integral over
// the joint Gaussian density) and frozen here.
constexpr double kThreshold512_341 = 0.4316227444498595;
constexpr double kThreshold512_256 = 0.6744897501960818;
constexpr double kThreshold256_171 = 0.4289374437046087;
constexpr double kThreshold128_85 = 0.4343111611752096;

struct EpsilonCase {
  double theta;
  double epsilon;
};
constexpr EpsilonCase kEpsilon512_341[] = {
    {0.3, 0.08607529646665979},
    {0.8, 0.10960030482895211},
    {0.7953988301841436, 0.10973721911336354},
    {1.5207754699891265, 0.010319483965309822},
    {2.5, 0.11033951072341741},
};
constexpr double kGrid50Max = 0.1108940731012864;
constexpr double kGrid50CosAtMax = -0.7432998910984375;

TEST(Numerics, ErfinvInvertsErf) {
  for (double y : {-0.999999, -0.9, -0.5, -1e-6, 0.0, 1e-8, 0.3, 0.7, 0.99, 0.9999999}) {
    EXPECT_NEAR(std::erf(erfinv(y)), y, 1e-14) << y;
  }
  EXPECT_TRUE(std::isinf(erfinv(1.0)));
  EXPECT_THROW(erfinv(1.5), Error);
  EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-16);
  EXPECT_NEAR(normal_sf(8.0), 6.220960574271785e-16, 1e-24);
}

TEST(Numerics, QuadratureAndFailure) {
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -10, 10, 1e-12), std::sqrt(std::numbers::pi),
              1e-11);
  EXPECT_NEAR(integrate([](double x) { return x < 1.0 ? 0.0 : 1.0; }, 0, 3, 1e-10), 2.0, 1e-10);
  try {
    integrate([](double x) { return std::sin(1.0 / x) / x; }, 1e-6, 1.0, 1e-14, 8);
    ADD_FAILURE() << "expected QuadratureFailure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kQuadratureFailure);
  }
}

TEST(Epsilon, OrderThresholdMatchesReference) {
  EXPECT_NEAR(order_threshold(512, 341), kThreshold512_341, 1e-12);
  EXPECT_NEAR(order_threshold(512, 256), kThreshold512_256, 1e-12);
  EXPECT_NEAR(order_threshold(256, 171), kThreshold256_171, 1e-12);
  EXPECT_NEAR(order_threshold(128, 85), kThreshold128_85, 1e-12);
}

TEST(Epsilon, MatchesReferenceValues) {
  for (const auto& c : kEpsilon512_341) {
    EXPECT_NEAR(epsilon_theoretical(512, 341, c.theta, 1e-9), c.epsilon, 1e-6) << c.theta;
  }
}

TEST(Epsilon, GridPeak) {
  double best = 0.0, best_cos = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double theta = 0.05 + (std::numbers::pi - 0.1) * i / 49.0;
    const double cos_theta = std::cos(theta);
    const double e = epsilon_theoretical(512, 341, theta, 1e-9);
    if (e > best) {
      best = e;
      best_cos = cos_theta;
    }
  }
  EXPECT_NEAR(best, kGrid50Max, 1e-6);
  EXPECT_NEAR(std::abs(best_cos), std::abs(kGrid50CosAtMax), 1e-9);
  EXPECT_GE(best, 0.10);
  EXPECT_LE(best, 0.12);
}

TEST(Epsilon, SymmetricUnderNegation) {
  for (double theta : {0.1, 0.4, 0.9, 1.3, 1.55}) {
    EXPECT_NEAR(epsilon_theoretical(512, 341, theta), epsilon_theoretical(512, 341, std::numbers::pi - theta),
                1e-4);
  }
}

TEST(Epsilon, RejectsBadInputs) {
  EXPECT_THROW(epsilon_theoretical(512, 341, 0.0), Error);
  EXPECT_THROW(epsilon_theoretical(512, 341, std::numbers::pi), Error);
  EXPECT_THROW(epsilon_theoretical(512, 341, std::numbers::pi / 2), Error);
  EXPECT_THROW(epsilon_theoretical(512, 512, 1.0), Error);
  EXPECT_THROW(epsilon_theoretical(512, 0, 1.0), Error);
}

TEST(Isometry, MonteCarloTracksTheory) {
  const auto near = isometry_mc(512, 341, 341, 0.01, 200, 1);
  EXPECT_EQ(near.trials, 200u);
  EXPECT_LT(near.mean_abs, 0.02);
  for (double theta : {0.3, 0.8, 2.5}) {
    const auto mc = isometry_mc(512, 341, 341, theta, 400, 2);
    EXPECT_NEAR(mc.mean_abs, epsilon_theoretical(512, 341, theta), 0.01) << theta;
  }
}

TEST(Isometry, DeterministicAcrossThreadCounts) {
  const auto a = isometry_mc(128, 85, 85, 1.0, 64, 3, 1);
  const auto b = isometry_mc(128, 85, 85, 1.0, 64, 3, 4);
  EXPECT_EQ(a.mean_abs, b.mean_abs);
  EXPECT_EQ(a.max_abs, b.max_abs);
}

TEST(Isometry, LargerDimensionDoesNotHurt) {
  const auto small = isometry_mc(512, 341, 341, 0.8, 200, 4);
  const auto large = isometry_mc(2048, 1365, 1365, 0.8, 200, 4);
  EXPECT_LE(large.mean_abs, small.mean_abs + 0.01);
}

TEST(Isometry, GridSkipsRightAngle) {
  const auto grid = theta_grid(21, 0.05, std::numbers::pi - 0.05);
  EXPECT_EQ(grid.size(), 20u);
  for (double t : grid) EXPECT_GT(std::abs(t - std::numbers::pi / 2), 1e-9);
  const auto rows = isometry_report(64, 40, 40, {0.5, 2.0}, 20, 5);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].mc.trials, 20u);
}

TEST(Codebook, ArgmaxMatchesReference) {
  EXPECT_EQ(codebook_scan_argmax(3), (std::vector<std::size_t>{2}));
  EXPECT_EQ(codebook_scan_argmax(128), (std::vector<std::size_t>{85, 86}));
  EXPECT_EQ(codebook_scan_argmax(192), (std::vector<std::size_t>{128}));
  EXPECT_EQ(codebook_scan_argmax(256), (std::vector<std::size_t>{171}));
  EXPECT_EQ(codebook_scan_argmax(512), (std::vector<std::size_t>{341, 342}));
}

TEST(Codebook, ClosedFormAgreesWithScan) {
  for (std::size_t d = 1; d <= 2048; ++d) {
    ASSERT_EQ(optimal_alpha(d), codebook_scan_argmax(d).front()) << d;
  }
  EXPECT_EQ(alpha_rule(256), 170u);
  EXPECT_EQ(alpha_rule(512), 341u);
  EXPECT_NEAR(codebook_log_size(3, 2), std::log(12.0), 1e-12);
}

TEST(OrderStatistic, ConvergesToThreshold) {
  const auto r = order_stat_check(512, 341, 10000, 6);
  EXPECT_EQ(r.trials, 10000u);
  EXPECT_NEAR(r.theoretical, kThreshold512_341, 1e-12);
  EXPECT_LT(r.deviation, 0.01);
  EXPECT_NEAR(r.empirical_std, r.predicted_std, 0.2 * r.predicted_std);

  const auto median = order_stat_check(512, 256, 4000, 7);
  EXPECT_NEAR(median.empirical_mean, 0.6745, 0.01);

  const auto d128 = order_stat_check(128, 85, 4000, 8);
  const auto d1024 = order_stat_check(1024, 683, 4000, 8);
  EXPECT_LT(d1024.empirical_std, d128.empirical_std);
  EXPECT_THROW(order_stat_check(512, 341, 10, 9), Error);
}

TEST(Assumption1, CosineConcentratesWithDimension) {
  double prev = 1.0;
  for (std::size_t d : {64u, 256u, 1024u, 4096u}) {
    const auto r = assumption1_check(d, 0.8, 400, 10);
    EXPECT_LT(r.mean_abs_error, prev) << d;
    prev = r.mean_abs_error;
  }
  EXPECT_LT(prev, 0.02);
}

CostModel model(std::uint64_t D, ahe::BackendDescriptor backend, std::size_t alpha, std::size_t beta) {
  CostModel m;
  m.identities = D;
  m.backend = backend;
  m.packing = packing::capacity(backend.slot_bits, alpha, beta);
  m.d = 512;
  return m;
}

const ahe::BackendDescriptor kPaillier2048{ahe::BackendKind::kPaillier, 1, 2048, 512};
const ahe::BackendDescriptor kMock{ahe::BackendKind::kSimulatedSimd, 4096, 50, 135168};

TEST(Cost, ReferenceValues) {
  const auto twopc = model(1000000, kPaillier2048, 341, 341);
  EXPECT_DOUBLE_EQ(comm_cost_bytes(twopc, Protocol::kTwoPc), 85250128.0);
  EXPECT_NEAR(to_mib(comm_cost_bytes(twopc, Protocol::kTwoPc)), 81.30085754394531, 1e-9);

  const auto ckks = model(1000000, kMock, 341, 341);
  EXPECT_DOUBLE_EQ(comm_cost_bytes(ckks, Protocol::kIdface), 13246466.5);
  EXPECT_NEAR(table_mb(comm_cost_bytes(ckks, Protocol::kIdface)), 12.93600244140625, 1e-9);

  const auto storage = model(1000000, kPaillier2048, 341, 63);
  const auto bytes = dbenc::encrypted_storage_bytes(1000000, storage.packing, kPaillier2048, 512);
  EXPECT_EQ(bytes, 1537736704u);
  EXPECT_NEAR(table_gb(static_cast<double>(bytes)), 1.501696, 1e-9);
  EXPECT_EQ(dbenc::encrypted_storage_bytes(10000, storage.packing, kPaillier2048, 512), 15728640u);
}

TEST(Cost, FullBatchBoundary) {
  auto m = model(341, kPaillier2048, 341, 63);
  EXPECT_DOUBLE_EQ(comm_cost_bytes(m, Protocol::kIdface), 2.0 * 512 + std::ceil(9.0) / 8.0);
  m.identities = 342;
  EXPECT_DOUBLE_EQ(comm_cost_bytes(m, Protocol::kIdface), 4.0 * 512 + 9.0 / 8.0);
}

TEST(Cost, MultiPartyScalesWithParties) {
  auto m = model(1000000, kPaillier2048, 341, 341);
  m.parties = 2;
  EXPECT_DOUBLE_EQ(comm_cost_bytes(m, Protocol::kMulti), comm_cost_bytes(m, Protocol::kTwoPc));
  m.parties = 3;
  EXPECT_NEAR(to_mib(comm_cost_bytes(m, Protocol::kMulti)), 162.6017, 1e-3);
  m.parties = 21;
  EXPECT_NEAR(to_mib(comm_cost_bytes(m, Protocol::kMulti)), 1626.017, 1e-2);
  m.parties = 3;
  EXPECT_DOUBLE_EQ(enroll_broadcast_bytes(m), 2.0 * (1024 + 20) / 8.0);
  EXPECT_EQ(ceil_log2_u64(1), 0u);
  EXPECT_EQ(ceil_log2_u64(1000000), 20u);
  EXPECT_EQ(ceil_log2_u64(1024), 10u);
}

}  // namespace
}  // namespace idface::analysis
