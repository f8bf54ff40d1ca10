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

#ifndef IDFACE_BIGINT_HPP_
#define IDFACE_BIGINT_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "idface/random.hpp"

namespace idface {

// Minimal big-endian magnitude; zero encodes as an empty byte string.
std::vector<std::uint8_t> to_bytes(const mpz_class& v);
// Big-endian magnitude left-padded to exactly `width` bytes. Throws Overflow
// when v does not fit.
std::vector<std::uint8_t> to_bytes_fixed(const mpz_class& v, std::size_t width);
mpz_class from_bytes(const std::uint8_t* data, std::size_t len);

std::string to_hex(const mpz_class& v);
mpz_class from_hex(const std::string& hex);

std::size_t bit_length(const mpz_class& v);

// Uniform integer in [0, bound) by rejection sampling on bytes from `rng`.
mpz_class random_below(RandomSource& rng, const mpz_class& bound);
// Uniform integer with exactly `bits` bits (top bit set).
mpz_class random_bits(RandomSource& rng, std::size_t bits);

// Big-endian integer helpers for the wire format.
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v);
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v);
std::uint32_t get_u32(const std::uint8_t* p);
std::uint64_t get_u64(const std::uint8_t* p);

}  // namespace idface

#endif  // IDFACE_BIGINT_HPP_
