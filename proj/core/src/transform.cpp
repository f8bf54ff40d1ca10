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

#include "idface/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "idface/error.hpp"

namespace idface::transform {

FeatureTemplate::FeatureTemplate(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) fail(ErrorCode::kDimensionMismatch, "template dimension must be at least 2");
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorCode::kInvalidArgument, "template has a non-finite entry");
  }
}

double FeatureTemplate::norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

FeatureTemplate FeatureTemplate::normalized() const {
  const double n = norm();
  if (n == 0.0) fail(ErrorCode::kDegenerateInput, "cannot normalize the zero vector");
  std::vector<double> out(values_);
  for (double& v : out) v /= n;
  return FeatureTemplate(std::move(out));
}

double dot(const FeatureTemplate& a, const FeatureTemplate& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::kDimensionMismatch, "template dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

TernaryTemplate::TernaryTemplate(std::vector<std::int8_t> values) : values_(std::move(values)) {
  for (std::int8_t v : values_) {
    if (v < -1 || v > 1) fail(ErrorCode::kInvalidArgument, "ternary entry outside {-1,0,1}");
    if (v != 0) ++k_;
  }
  if (k_ == 0) fail(ErrorCode::kDegenerateInput, "ternary template has no nonzero entry");
}

TernaryTemplate TernaryTemplate::negated() const {
  std::vector<std::int8_t> out(values_);
  for (auto& v : out) v = static_cast<std::int8_t>(-v);
  return TernaryTemplate(std::move(out));
}

TernaryTemplate ternarize(const FeatureTemplate& x, std::size_t k) {
  const std::size_t d = x.dim();
  if (k > d) fail(ErrorCode::kDimensionMismatch, "k exceeds the template dimension");
  if (k == 0) fail(ErrorCode::kInvalidArgument, "k must be positive");
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  const auto& v = x.values();
  auto before = [&v](std::size_t a, std::size_t b) {
    const double ma = std::fabs(v[a]);
    const double mb = std::fabs(v[b]);
    return ma > mb || (ma == mb && a < b);
  };
  std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k - 1), idx.end(), before);
  if (v[idx[k - 1]] == 0.0) {
    fail(ErrorCode::kDegenerateInput, "fewer than k nonzero entries");
  }
  std::vector<std::int8_t> out(d, 0);
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t i = idx[r];
    out[i] = v[i] > 0 ? 1 : -1;
  }
  return TernaryTemplate(std::move(out));
}

BinarySplit split(const TernaryTemplate& z) {
  BinarySplit s{BitVector(z.dim()), BitVector(z.dim())};
  for (std::size_t i = 0; i < z.dim(); ++i) {
    if (z[i] > 0) s.plus.set(i, true);
    if (z[i] < 0) s.minus.set(i, true);
  }
  return s;
}

TernaryTemplate merge(const BinarySplit& s) {
  if (s.plus.size() != s.minus.size()) fail(ErrorCode::kDimensionMismatch, "split halves differ in length");
  if (!s.plus.disjoint(s.minus)) fail(ErrorCode::kDegenerateInput, "split halves overlap");
  std::vector<std::int8_t> out(s.dim(), 0);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    out[i] = static_cast<std::int8_t>(int{s.plus.get(i)} - int{s.minus.get(i)});
  }
  return TernaryTemplate(std::move(out));
}

std::int64_t ternary_inner(const TernaryTemplate& a, const TernaryTemplate& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::kDimensionMismatch, "ternary dimensions differ");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

std::int64_t split_inner(const BinarySplit& a, const BinarySplit& b) {
  const auto pp = static_cast<std::int64_t>(a.plus.and_popcount(b.plus));
  const auto mm = static_cast<std::int64_t>(a.minus.and_popcount(b.minus));
  const auto pm = static_cast<std::int64_t>(a.plus.and_popcount(b.minus));
  const auto mp = static_cast<std::int64_t>(a.minus.and_popcount(b.plus));
  return (pp + mm) - (pm + mp);
}

double rescaled_cosine(std::int64_t score, std::size_t k_enroll, std::size_t k_query) {
  if (k_enroll == 0 || k_query == 0) fail(ErrorCode::kInvalidArgument, "nonzero counts must be positive");
  const auto bound = static_cast<std::int64_t>(std::min(k_enroll, k_query));
  if (score > bound || score < -bound) {
    fail(ErrorCode::kRangeViolation, "score " + std::to_string(score) + " exceeds +-" + std::to_string(bound));
  }
  return static_cast<double>(score) /
         std::sqrt(static_cast<double>(k_enroll) * static_cast<double>(k_query));
}

namespace {

std::vector<double> gaussian_vector(std::size_t d, Rng& rng) {
  std::vector<double> v(d);
  for (double& e : v) e = rng.gaussian();
  return v;
}

double norm_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

}  // namespace

FeatureTemplate random_unit(std::size_t d, Rng& rng) {
  for (;;) {
    std::vector<double> v = gaussian_vector(d, rng);
    const double n = norm_of(v);
    if (n > 0.0) {
      for (double& e : v) e /= n;
      return FeatureTemplate(std::move(v));
    }
  }
}

std::pair<FeatureTemplate, FeatureTemplate> sample_pair_exact_angle(std::size_t d, double theta,
                                                                    Rng& rng) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    fail(ErrorCode::kInvalidAngle, "angle must lie in (0, pi)");
  }
  if (d < 2) fail(ErrorCode::kDimensionMismatch, "dimension must be at least 2");
  FeatureTemplate x = random_unit(d, rng);
  const auto& xv = x.values();
  std::vector<double> u;
  for (;;) {
    u = gaussian_vector(d, rng);
    // Two Gram-Schmidt passes keep <x, u> at rounding level.
    for (int pass = 0; pass < 2; ++pass) {
      double proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += xv[i] * u[i];
      for (std::size_t i = 0; i < d; ++i) u[i] -= proj * xv[i];
    }
    const double n = norm_of(u);
    if (n > 1e-8) {
      for (double& e : u) e /= n;
      break;
    }
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<double> w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = c * xv[i] + s * u[i];
  return {std::move(x), FeatureTemplate(std::move(w))};
}

std::pair<FeatureTemplate, FeatureTemplate> sample_pair_gaussian(std::size_t d, double theta,
                                                                 Rng& rng) {
  if (!(theta > 0.0 && theta < std::numbers::pi) || theta == std::numbers::pi / 2) {
    fail(ErrorCode::kInvalidAngle, "angle must lie in (0, pi/2) or (pi/2, pi)");
  }
  std::vector<double> x = gaussian_vector(d, rng);
  std::vector<double> y = gaussian_vector(d, rng);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<double> w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = c * x[i] + s * y[i];
  return {FeatureTemplate(std::move(x)), FeatureTemplate(std::move(w))};
}

}  // namespace idface::transform
