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

#ifndef IDFACE_AHE_SIMULATED_SIMD_HPP_
#define IDFACE_AHE_SIMULATED_SIMD_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "idface/ahe/scheme.hpp"

namespace idface::ahe {

inline constexpr const char* kInsecureMockMode = "insecure-mock";

// NOT ENCRYPTION. Ciphertexts carry the slot values in the clear. This
// backend mirrors the slot count, slot width and ciphertext size of a
// 4096-slot approximate-arithmetic scheme so that capacity and storage
// accounting can be exercised without a lattice library. Construction
// fails unless mode is exactly "insecure-mock".
class SimulatedSimd final : public PublicScheme,
                            public SecretScheme,
                            public std::enable_shared_from_this<SimulatedSimd> {
 public:
  static constexpr std::size_t kDefaultSlotCount = 4096;
  static constexpr std::size_t kDefaultSlotBits = 50;
  static constexpr std::size_t kDefaultCiphertextBytes = 135168;

  static std::shared_ptr<SimulatedSimd> create(const std::string& mode,
                                               std::size_t slot_count = kDefaultSlotCount,
                                               std::size_t slot_bits = kDefaultSlotBits,
                                               std::size_t ciphertext_bytes = kDefaultCiphertextBytes,
                                               std::uint64_t key_id = 0x6d6f636b00000001ULL);

  BackendDescriptor descriptor() const override;
  std::uint64_t key_id() const override { return key_id_; }

  Ciphertext encrypt(const Plaintext& slots) const override;
  Ciphertext encrypt_zero() const override;
  Ciphertext add(const Ciphertext& a, const Ciphertext& b) const override;
  void add_inplace(Ciphertext& acc, const Ciphertext& b) const override;
  Ciphertext scalar_mul(const mpz_class& c, const Ciphertext& ct) const override;

  std::vector<std::uint8_t> to_fixed_bytes(const Ciphertext& ct) const override;
  std::vector<std::uint8_t> to_wire_bytes(const Ciphertext& ct) const override;
  Ciphertext from_bytes(const std::uint8_t* data, std::size_t len) const override;

  Plaintext decrypt(const Ciphertext& ct) const override;
  std::shared_ptr<const PublicScheme> public_scheme() const override;

  PublicScheme& as_public() { return *this; }
  SecretScheme& as_secret() { return *this; }

 private:
  SimulatedSimd(std::size_t slot_count, std::size_t slot_bits, std::size_t ciphertext_bytes,
                std::uint64_t key_id);
  void check_slot(std::uint64_t v) const;

  std::size_t slot_count_;
  std::size_t slot_bits_;
  std::size_t ciphertext_bytes_;
  std::uint64_t key_id_;
};

}  // namespace idface::ahe

#endif  // IDFACE_AHE_SIMULATED_SIMD_HPP_
