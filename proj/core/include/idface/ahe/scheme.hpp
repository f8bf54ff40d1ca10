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

#ifndef IDFACE_AHE_SCHEME_HPP_
#define IDFACE_AHE_SCHEME_HPP_

#include <gmpxx.h>

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace idface::ahe {

enum class BackendKind : std::uint8_t {
  kPaillier = 0,
  kSimulatedSimd = 1,
};

std::string backend_name(BackendKind kind);
BackendKind parse_backend(const std::string& name);

struct BackendDescriptor {
  BackendKind kind = BackendKind::kPaillier;
  std::size_t slot_count = 0;
  std::size_t slot_bits = 0;
  std::size_t ciphertext_bytes = 0;
  bool operator==(const BackendDescriptor&) const = default;
};

// Slot vector; entries are nonnegative.
using Plaintext = std::vector<mpz_class>;

struct Ciphertext {
  std::uint64_t key_id = 0;
  // Paillier residue mod n^2, or the mirrored slot values of the mock.
  std::variant<mpz_class, std::vector<std::uint64_t>> payload;
};

struct OpCountSnapshot {
  std::uint64_t encryptions = 0;
  std::uint64_t decryptions = 0;
  std::uint64_t additions = 0;
  std::uint64_t scalar_muls = 0;
  std::uint64_t rotations = 0;
};

class OpCounters {
 public:
  void count_encryption() { encryptions_.fetch_add(1, std::memory_order_relaxed); }
  void count_decryption() { decryptions_.fetch_add(1, std::memory_order_relaxed); }
  void count_addition() { additions_.fetch_add(1, std::memory_order_relaxed); }
  void count_scalar_mul() { scalar_muls_.fetch_add(1, std::memory_order_relaxed); }
  OpCountSnapshot snapshot() const;
  void reset();

 private:
  std::atomic<std::uint64_t> encryptions_{0};
  std::atomic<std::uint64_t> decryptions_{0};
  std::atomic<std::uint64_t> additions_{0};
  std::atomic<std::uint64_t> scalar_muls_{0};
};

// Operations available to a holder of the public key.
class PublicScheme {
 public:
  virtual ~PublicScheme() = default;

  virtual BackendDescriptor descriptor() const = 0;
  virtual std::uint64_t key_id() const = 0;

  virtual Ciphertext encrypt(const Plaintext& slots) const = 0;
  // Fresh encryption of the all-zero slot vector.
  virtual Ciphertext encrypt_zero() const = 0;
  virtual Ciphertext add(const Ciphertext& a, const Ciphertext& b) const = 0;
  virtual void add_inplace(Ciphertext& acc, const Ciphertext& b) const;
  virtual Ciphertext scalar_mul(const mpz_class& c, const Ciphertext& ct) const = 0;

  // Exactly descriptor().ciphertext_bytes bytes.
  virtual std::vector<std::uint8_t> to_fixed_bytes(const Ciphertext& ct) const = 0;
  // Shortest form used on the wire.
  virtual std::vector<std::uint8_t> to_wire_bytes(const Ciphertext& ct) const = 0;
  virtual Ciphertext from_bytes(const std::uint8_t* data, std::size_t len) const = 0;

  OpCounters& counters() const { return counters_; }

 protected:
  void check_key(const Ciphertext& ct) const;

 private:
  mutable OpCounters counters_;
};

class SecretScheme {
 public:
  virtual ~SecretScheme() = default;
  virtual Plaintext decrypt(const Ciphertext& ct) const = 0;
  virtual std::shared_ptr<const PublicScheme> public_scheme() const = 0;

  OpCounters& counters() const { return counters_; }

 private:
  mutable OpCounters counters_;
};

}  // namespace idface::ahe

#endif  // IDFACE_AHE_SCHEME_HPP_
