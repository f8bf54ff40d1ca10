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

#ifndef IDFACE_PACKING_HPP_
#define IDFACE_PACKING_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "idface/transform.hpp"

namespace idface::packing {

struct PackingParams {
  std::size_t alpha = 0;       // nonzero count of enrolled templates
  std::size_t beta = 0;        // nonzero count of queries
  std::uint64_t p = 0;         // digit base, min(alpha, beta) + 1
  std::size_t digit_bits = 0;  // ceil(log2 p)
  std::size_t m = 0;           // templates per slot
  std::size_t slot_bits = 0;

  // Exclusive upper bound on a packed value: 2^(digit_bits * m).
  mpz_class value_bound() const;
  bool operator==(const PackingParams&) const = default;
};

// One packed integer per template coordinate.
struct PackedVector {
  std::vector<mpz_class> entries;
  std::size_t dim() const { return entries.size(); }
  bool operator==(const PackedVector&) const = default;
};

std::size_t ceil_log2(std::uint64_t v);

PackingParams capacity(std::size_t slot_bits, std::size_t alpha, std::size_t beta);

// Stacks up to m templates as digits: template i sits at bit offset
// i * digit_bits. Missing trailing templates leave their digits zero.
std::pair<PackedVector, PackedVector> encode(const std::vector<transform::TernaryTemplate>& templates,
                                             const PackingParams& params);

std::uint64_t extract_digit(const mpz_class& value, std::size_t index, const PackingParams& params);

// Per-template signed scores: digit i of s_plus minus digit i of s_minus.
std::vector<std::int64_t> decode(const mpz_class& s_plus, const mpz_class& s_minus,
                                 const PackingParams& params);

// 4-byte big-endian entry count, then per entry a 4-byte length and the
// minimal big-endian magnitude.
std::vector<std::uint8_t> serialize(const PackedVector& v);
PackedVector deserialize(const std::uint8_t* data, std::size_t len);

}  // namespace idface::packing

#endif  // IDFACE_PACKING_HPP_
