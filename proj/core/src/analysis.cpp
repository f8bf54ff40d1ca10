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

#include "idface/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "idface/error.hpp"
#include "idface/parallel.hpp"
#include "idface/random.hpp"
#include "idface/transform.hpp"

namespace idface::analysis {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTail = 12.0;

void check_angle(double theta) {
  if (!(theta > 0.0 && theta < kPi) || std::abs(theta - kPi / 2) < 1e-9) {
    fail(ErrorCode::kInvalidAngle, "theta must lie in (0, pi) and differ from pi/2, got " + std::to_string(theta));
  }
}

void check_alpha(std::size_t d, std::size_t alpha) {
  if (alpha == 0 || alpha >= d) {
    fail(ErrorCode::kInvalidArgument, "need 1 <= alpha < d, got alpha=" + std::to_string(alpha) +
                                          " d=" + std::to_string(d));
  }
}

// Gauss-Kronrod 7/15 nodes on [-1, 1] (non-negative half).
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, and the centre.
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double erfinv(double y) {
  if (!(y > -1.0 && y < 1.0)) {
    if (y == 1.0) return INFINITY;
    if (y == -1.0) return -INFINITY;
    fail(ErrorCode::kInvalidArgument, "erfinv argument outside [-1, 1]");
  }
  if (y == 0.0) return 0.0;
  // Giles' single-precision approximation as the starting point.
  double w = -std::log((1.0 - y) * (1.0 + y));
  double x;
  if (w < 5.0) {
    w -= 2.5;
    double p = 2.81022636e-08;
    p = 3.43273939e-07 + p * w;
    p = -3.5233877e-06 + p * w;
    p = -4.39150654e-06 + p * w;
    p = 0.00021858087 + p * w;
    p = -0.00125372503 + p * w;
    p = -0.00417768164 + p * w;
    p = 0.246640727 + p * w;
    p = 1.50140941 + p * w;
    x = p * y;
  } else {
    w = std::sqrt(w) - 3.0;
    double p = -0.000200214257;
    p = 0.000100950558 + p * w;
    p = 0.00134934322 + p * w;
    p = -0.00367342844 + p * w;
    p = 0.00573950773 + p * w;
    p = -0.0076224613 + p * w;
    p = 0.00943887047 + p * w;
    p = 1.00167406 + p * w;
    p = 2.83297682 + p * w;
    x = p * y;
  }
  const double two_over_sqrt_pi = 2.0 / std::sqrt(kPi);
  for (int i = 0; i < 2; ++i) {
    const double err = std::erf(x) - y;
    x -= err / (two_over_sqrt_pi * std::exp(-x * x));
  }
  return x;
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 std::size_t max_intervals) {
  if (a == b) return 0.0;
  std::vector<Segment> segments{gk15(f, a, b)};
  double total = segments[0].value;
  double error = segments[0].error;
  while (error > abs_tol) {
    if (segments.size() >= max_intervals) {
      fail(ErrorCode::kQuadratureFailure, "error estimate " + std::to_string(error) + " above tolerance " +
                                              std::to_string(abs_tol));
    }
    auto worst = std::max_element(segments.begin(), segments.end(),
                                  [](const Segment& l, const Segment& r) { return l.error < r.error; });
    const Segment s = *worst;
    const double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) {
      fail(ErrorCode::kQuadratureFailure, "interval cannot be subdivided further");
    }
    *worst = gk15(f, s.a, mid);
    segments.push_back(gk15(f, mid, s.b));
    total = 0.0;
    error = 0.0;
    for (const auto& seg : segments) {
      total += seg.value;
      error += seg.error;
    }
  }
  return total;
}

double order_threshold(std::size_t d, std::size_t alpha) {
  check_alpha(d, alpha);
  return std::numbers::sqrt2 * erfinv(1.0 - static_cast<double>(alpha) / static_cast<double>(d));
}

// With U the first coordinate and W = cos(theta) U + sin(theta) Y, write
// W / cos(theta) = U + V, V ~ N(0, tan^2 theta). Both coordinates survive
// when |U| > c and |U + V| > c / |cos theta|. Integrating V out in closed
// form leaves a one-dimensional integral over U.
double agreement_probability(std::size_t d, std::size_t alpha, double theta, double abs_tol) {
  check_angle(theta);
  const double c = order_threshold(d, alpha);
  if (c >= kTail) return 0.0;
  const double cs = std::cos(theta);
  const double a = c / std::abs(cs);
  const double s = std::abs(std::tan(theta));
  const auto integrand = [&](double u) {
    const double density = std::exp(-0.5 * u * u) / std::sqrt(2.0 * kPi);
    return density * (normal_sf((a - u) / s) - normal_cdf((-a - u) / s));
  };
  double p = 0.0;
  // The inner probability has its steepest change at u = a; split there.
  if (a > c && a < kTail) {
    p = integrate(integrand, c, a, abs_tol / 2) + integrate(integrand, a, kTail, abs_tol / 2);
  } else {
    p = integrate(integrand, c, kTail, abs_tol);
  }
  return cs > 0 ? p : -p;
}

double epsilon_theoretical(std::size_t d, std::size_t alpha, double theta, double abs_tol) {
  const double p = agreement_probability(d, alpha, theta, abs_tol);
  return std::abs(std::cos(theta) - 2.0 * p * static_cast<double>(d) / static_cast<double>(alpha));
}

IsometryStats isometry_mc(std::size_t d, std::size_t alpha, std::size_t beta, double theta, std::size_t trials,
                          std::uint64_t seed, std::size_t threads) {
  check_angle(theta);
  if (trials == 0) fail(ErrorCode::kInvalidArgument, "trials must be positive");
  if (alpha == 0 || beta == 0 || alpha > d || beta > d) {
    fail(ErrorCode::kInvalidArgument, "nonzero counts must lie in [1, d]");
  }
  std::vector<double> deltas(trials);
  const double target = std::cos(theta);
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    auto [x, y] = transform::sample_pair_exact_angle(d, theta, rng);
    const auto tx = transform::ternarize(x, alpha);
    const auto ty = transform::ternarize(y, beta);
    deltas[i] = transform::rescaled_cosine(transform::ternary_inner(tx, ty), alpha, beta) - target;
  });
  IsometryStats stats;
  stats.trials = trials;
  for (double v : deltas) {
    stats.mean_abs += std::abs(v);
    stats.mean_signed += v;
    stats.max_abs = std::max(stats.max_abs, std::abs(v));
  }
  stats.mean_abs /= static_cast<double>(trials);
  stats.mean_signed /= static_cast<double>(trials);
  return stats;
}

std::vector<double> theta_grid(std::size_t n, double lo, double hi) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) {
    if (std::abs(lo - kPi / 2) >= 1e-9) out.push_back(lo);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    if (std::abs(t - kPi / 2) < 1e-9) continue;
    out.push_back(t);
  }
  return out;
}

std::vector<IsometryRow> isometry_report(std::size_t d, std::size_t alpha, std::size_t beta,
                                         const std::vector<double>& thetas, std::size_t trials,
                                         std::uint64_t seed, std::size_t threads) {
  std::vector<IsometryRow> rows;
  rows.reserve(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    IsometryRow row;
    row.theta = thetas[i];
    // The closed form assumes one shared nonzero count.
    row.epsilon = epsilon_theoretical(d, alpha, thetas[i]);
    row.mc = isometry_mc(d, alpha, beta, thetas[i], trials, derive_seed(seed, 0x1000 + i), threads);
    rows.push_back(row);
  }
  return rows;
}

double codebook_log_size(std::size_t d, std::size_t alpha) {
  if (alpha == 0 || alpha > d) fail(ErrorCode::kInvalidArgument, "need 0 < alpha <= d");
  const double dd = static_cast<double>(d);
  const double aa = static_cast<double>(alpha);
  return std::lgamma(dd + 1) - std::lgamma(aa + 1) - std::lgamma(dd - aa + 1) + aa * std::numbers::ln2;
}

std::size_t optimal_alpha(std::size_t d) {
  if (d == 0) fail(ErrorCode::kInvalidArgument, "d must be positive");
  // f(a+1) / f(a) = 2(d - a) / (a + 1) drops to at most 1 once 3a >= 2d - 1.
  const std::size_t a = (2 * d - 1 + 2) / 3;
  return std::max<std::size_t>(1, std::min(a, d));
}

std::vector<std::size_t> codebook_scan_argmax(std::size_t d, double rel_tol) {
  std::vector<double> values(d);
  double best = -INFINITY;
  for (std::size_t a = 1; a <= d; ++a) {
    values[a - 1] = codebook_log_size(d, a);
    best = std::max(best, values[a - 1]);
  }
  std::vector<std::size_t> out;
  for (std::size_t a = 1; a <= d; ++a) {
    if (best - values[a - 1] <= rel_tol * std::max(1.0, std::abs(best))) out.push_back(a);
  }
  return out;
}

std::size_t alpha_rule(std::size_t d) { return 2 * d / 3; }

OrderStatReport order_stat_check(std::size_t d, std::size_t alpha, std::size_t trials, std::uint64_t seed,
                                 std::size_t threads) {
  check_alpha(d, alpha);
  if (trials < 100) fail(ErrorCode::kInvalidArgument, "order statistic check needs at least 100 trials");
  std::vector<double> stat(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    std::vector<double> v(d);
    for (auto& x : v) x = std::abs(rng.gaussian());
    auto nth = v.begin() + static_cast<std::ptrdiff_t>(d - alpha - 1);
    std::nth_element(v.begin(), nth, v.end());
    stat[i] = *nth;
  });
  OrderStatReport r;
  r.trials = trials;
  double sum = 0.0;
  for (double v : stat) sum += v;
  r.empirical_mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (double v : stat) ss += (v - r.empirical_mean) * (v - r.empirical_mean);
  r.empirical_std = std::sqrt(ss / static_cast<double>(trials - 1));
  r.standard_error = r.empirical_std / std::sqrt(static_cast<double>(trials));
  r.theoretical = order_threshold(d, alpha);
  r.deviation = std::abs(r.empirical_mean - r.theoretical);
  const double q = 1.0 - static_cast<double>(alpha) / static_cast<double>(d);
  const double density = 2.0 * std::exp(-0.5 * r.theoretical * r.theoretical) / std::sqrt(2.0 * kPi);
  r.predicted_std = std::sqrt(q * (1.0 - q) / static_cast<double>(d)) / density;
  return r;
}

Assumption1Report assumption1_check(std::size_t d, double theta, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) fail(ErrorCode::kInvalidArgument, "samples must be positive");
  Assumption1Report r;
  r.samples = samples;
  const double target = std::cos(theta);
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, i));
    auto [x, w] = transform::sample_pair_gaussian(d, theta, rng);
    const double c = transform::dot(x, w) / (x.norm() * w.norm());
    r.mean_cosine += c;
    r.mean_abs_error += std::abs(c - target);
  }
  r.mean_cosine /= static_cast<double>(samples);
  r.mean_abs_error /= static_cast<double>(samples);
  r.bias = std::abs(r.mean_cosine - target);
  return r;
}

std::size_t ceil_log2_u64(std::uint64_t v) {
  std::size_t bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < v) ++bits;
  return bits;
}

double comm_cost_bytes(const CostModel& model, Protocol protocol) {
  if (model.identities == 0 || model.d == 0) fail(ErrorCode::kInvalidArgument, "cost model needs D > 0 and d > 0");
  const double id_bytes = static_cast<double>(ceil_log2_u64(model.identities)) / 8.0;
  const double share_bits = 2.0 * static_cast<double>(model.identities) * static_cast<double>(model.packing.beta) +
                            2.0 * static_cast<double>(model.d);
  switch (protocol) {
    case Protocol::kIdface: {
      const std::uint64_t per_ct = static_cast<std::uint64_t>(model.backend.slot_count) * model.packing.m;
      if (per_ct == 0) fail(ErrorCode::kInvalidArgument, "cost model needs positive slot capacity");
      const std::uint64_t batches = (model.identities + per_ct - 1) / per_ct;
      return 2.0 * static_cast<double>(batches) * static_cast<double>(model.backend.ciphertext_bytes) + id_bytes;
    }
    case Protocol::kTwoPc:
      return share_bits / 8.0;
    case Protocol::kMulti:
      if (model.parties < 2) fail(ErrorCode::kInvalidArgument, "multi-party cost needs at least 2 parties");
      return static_cast<double>(model.parties - 1) * share_bits / 8.0;
  }
  return 0.0;
}

double enroll_broadcast_bytes(const CostModel& model) {
  if (model.parties < 2) fail(ErrorCode::kInvalidArgument, "broadcast cost needs at least 2 parties");
  const double bits = 2.0 * static_cast<double>(model.d) + static_cast<double>(ceil_log2_u64(model.identities));
  return static_cast<double>(model.parties - 1) * bits / 8.0;
}

}  // namespace idface::analysis
