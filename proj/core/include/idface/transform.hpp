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

#ifndef IDFACE_TRANSFORM_HPP_
#define IDFACE_TRANSFORM_HPP_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "idface/bitvector.hpp"
#include "idface/random.hpp"

namespace idface::transform {

// Real-valued biometric template. Unit norm is not required: ternarization
// only looks at the ordering of magnitudes.
class FeatureTemplate {
 public:
  FeatureTemplate() = default;
  explicit FeatureTemplate(std::vector<double> values);

  std::size_t dim() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double norm() const;
  FeatureTemplate normalized() const;

 private:
  std::vector<double> values_;
};

double dot(const FeatureTemplate& a, const FeatureTemplate& b);

// Vector over {-1, 0, +1} with k >= 1 nonzero entries.
class TernaryTemplate {
 public:
  TernaryTemplate() = default;
  explicit TernaryTemplate(std::vector<std::int8_t> values);

  std::size_t dim() const { return values_.size(); }
  std::size_t k() const { return k_; }
  const std::vector<std::int8_t>& values() const { return values_; }
  int operator[](std::size_t i) const { return values_[i]; }

  TernaryTemplate negated() const;
  bool operator==(const TernaryTemplate& other) const { return values_ == other.values_; }

 private:
  std::vector<std::int8_t> values_;
  std::size_t k_ = 0;
};

struct BinarySplit {
  BitVector plus;
  BitVector minus;

  std::size_t dim() const { return plus.size(); }
  std::size_t k() const { return plus.popcount() + minus.popcount(); }
};

// Keeps the k largest-magnitude coordinates as their signs. Equal
// magnitudes are ranked by ascending index.
TernaryTemplate ternarize(const FeatureTemplate& x, std::size_t k);

BinarySplit split(const TernaryTemplate& z);
// Inverse of split. Throws DegenerateInput on an empty or overlapping pair.
TernaryTemplate merge(const BinarySplit& s);

std::int64_t ternary_inner(const TernaryTemplate& a, const TernaryTemplate& b);
// Same value computed from the four sign-split bit inner products.
std::int64_t split_inner(const BinarySplit& a, const BinarySplit& b);

double rescaled_cosine(std::int64_t score, std::size_t k_enroll, std::size_t k_query);

FeatureTemplate random_unit(std::size_t d, Rng& rng);

// Unit x and w with <x, w> = cos(theta) exactly up to rounding; w is rotated
// from x towards a uniformly drawn orthogonal direction.
std::pair<FeatureTemplate, FeatureTemplate> sample_pair_exact_angle(std::size_t d, double theta,
                                                                    Rng& rng);

// Unnormalized Gaussian pair (X, W) with W = cos(theta) X + sin(theta) Y for
// independent standard Gaussian X, Y. The normalized inner product is only
// concentrated around cos(theta).
std::pair<FeatureTemplate, FeatureTemplate> sample_pair_gaussian(std::size_t d, double theta,
                                                                 Rng& rng);

}  // namespace idface::transform

#endif  // IDFACE_TRANSFORM_HPP_
