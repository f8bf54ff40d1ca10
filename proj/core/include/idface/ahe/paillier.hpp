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

#ifndef IDFACE_AHE_PAILLIER_HPP_
#define IDFACE_AHE_PAILLIER_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "idface/ahe/scheme.hpp"
#include "idface/random.hpp"

namespace idface::ahe {

struct PaillierPublicKey {
  mpz_class n;
  mpz_class n_squared;

  std::size_t modulus_bits() const;
  std::uint64_t fingerprint() const;
};

struct PaillierSecretKey {
  mpz_class n;
  mpz_class lambda;  // lcm(p-1, q-1)
  mpz_class mu;      // lambda^-1 mod n
  // Optional factors; when present decryption runs mod p^2 and q^2.
  mpz_class p;
  mpz_class q;

  bool has_factors() const { return p != 0 && q != 0; }
  PaillierPublicKey public_key() const;
};

struct PaillierKeyPair {
  PaillierPublicKey pub;
  PaillierSecretKey sec;
};

// Primes of modulus_bits/2 bits each with the top two bits set, so n has
// exactly modulus_bits bits. Throws PrimeGenerationFailure after
// max_attempts candidate pairs.
PaillierKeyPair paillier_keygen(std::size_t modulus_bits, RandomSource& rng,
                                std::size_t max_attempts = 1000);
PaillierKeyPair paillier_from_primes(const mpz_class& p, const mpz_class& q);

// How several slots share one plaintext: slot j occupies bits
// [j*slot_bits, (j+1)*slot_bits). The default is one slot spanning the
// modulus width.
struct SlotLayout {
  std::size_t slot_count = 1;
  std::size_t slot_bits = 0;
};

SlotLayout default_layout(const PaillierPublicKey& pk);

enum class EncryptionMode : std::uint8_t {
  // r uniform in [1, n) with gcd(r, n) = 1; c = (1 + m n) r^n mod n^2.
  kStandard = 0,
  // r^n replaced by h_s^a with h_s = (-y^2)^n mod n^2 fixed at construction
  // and a a uniform half-modulus-size exponent, evaluated from a
  // precomputed window table. Much faster for bulk enrollment; relies on
  // the small-exponent variant of the residuosity assumption.
  kFixedBase = 1,
};

class PaillierPublic final : public PublicScheme {
 public:
  PaillierPublic(PaillierPublicKey key, SlotLayout layout, std::shared_ptr<RandomSource> rng,
                 EncryptionMode mode = EncryptionMode::kStandard);
  ~PaillierPublic() override;

  const PaillierPublicKey& key() const { return key_; }
  const SlotLayout& layout() const { return layout_; }
  EncryptionMode mode() const { return mode_; }

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

  // Packs slots into one integer < n. Throws SlotOverflow.
  mpz_class pack_slots(const Plaintext& slots) const;
  // Encrypts an already packed integer m < n.
  Ciphertext encrypt_packed(const mpz_class& m) const;

 private:
  mpz_class random_mask() const;

  PaillierPublicKey key_;
  SlotLayout layout_;
  std::shared_ptr<RandomSource> rng_;
  EncryptionMode mode_;
  std::uint64_t key_id_;
  std::size_t ct_bytes_;
  // Fixed-base window table: table_[w][j] = h_s^(j * 2^(8w)) mod n^2.
  std::vector<std::vector<mpz_class>> table_;
  std::size_t exponent_bits_ = 0;
};

class PaillierSecret final : public SecretScheme {
 public:
  PaillierSecret(PaillierSecretKey key, std::shared_ptr<const PaillierPublic> pub);

  const PaillierSecretKey& key() const { return key_; }

  Plaintext decrypt(const Ciphertext& ct) const override;
  // Plaintext integer in [0, n) without slot unpacking.
  mpz_class decrypt_packed(const Ciphertext& ct) const;
  std::shared_ptr<const PublicScheme> public_scheme() const override { return pub_; }
  std::shared_ptr<const PaillierPublic> paillier_public() const { return pub_; }

 private:
  PaillierSecretKey key_;
  std::shared_ptr<const PaillierPublic> pub_;
  // CRT constants.
  mpz_class p2_, q2_, hp_, hq_, q_inv_p_;
};

}  // namespace idface::ahe

#endif  // IDFACE_AHE_PAILLIER_HPP_
