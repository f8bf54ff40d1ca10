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

#ifndef IDFACE_BITVECTOR_HPP_
#define IDFACE_BITVECTOR_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace idface {

// Fixed-length bit vector packed 64 bits per word, low bit first. Bits past
// size() in the last word are always zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v);

  std::size_t popcount() const;
  // Indices of set bits in ascending order.
  std::vector<std::size_t> support() const;

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  bool operator==(const BitVector& other) const = default;

  bool disjoint(const BitVector& other) const;
  std::size_t and_popcount(const BitVector& other) const;

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& mutable_words() { return words_; }
  // Clears padding bits after direct word manipulation.
  void trim();

  // Packed little-endian byte form, ceil(size/8) bytes.
  std::vector<std::uint8_t> to_bytes() const;
  static BitVector from_bytes(const std::uint8_t* data, std::size_t bit_count);

  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace idface

#endif  // IDFACE_BITVECTOR_HPP_
