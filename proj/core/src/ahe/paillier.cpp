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

#include "idface/ahe/paillier.hpp"

#include <string>

#include "idface/bigint.hpp"
#include "idface/error.hpp"

namespace idface::ahe {

namespace {

constexpr int kPrimeReps = 30;
constexpr std::size_t kWindowBits = 8;

mpz_class invert(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    fail(ErrorCode::kMalformedKey, "value not invertible");
  }
  return r;
}

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool is_prime(const mpz_class& v) { return mpz_probab_prime_p(v.get_mpz_t(), kPrimeReps) != 0; }

mpz_class candidate_prime(RandomSource& rng, std::size_t bits) {
  mpz_class start = random_bits(rng, bits);
  if (bits >= 2) mpz_setbit(start.get_mpz_t(), bits - 2);
  mpz_class p;
  mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
  return p;
}

PaillierSecretKey make_secret(const mpz_class& p, const mpz_class& q) {
  PaillierSecretKey sk;
  sk.n = p * q;
  sk.p = p;
  sk.q = q;
  const mpz_class pm1 = p - 1;
  const mpz_class qm1 = q - 1;
  mpz_lcm(sk.lambda.get_mpz_t(), pm1.get_mpz_t(), qm1.get_mpz_t());
  sk.mu = invert(sk.lambda % sk.n, sk.n);
  return sk;
}

}  // namespace

std::size_t PaillierPublicKey::modulus_bits() const { return bit_length(n); }

std::uint64_t PaillierPublicKey::fingerprint() const {
  std::uint64_t h = 0x6964666163650001ULL;
  const std::size_t limbs = mpz_size(n.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i) {
    h = splitmix64(h ^ static_cast<std::uint64_t>(mpz_getlimbn(n.get_mpz_t(), i)));
  }
  return h;
}

PaillierPublicKey PaillierSecretKey::public_key() const { return PaillierPublicKey{n, n * n}; }

PaillierKeyPair paillier_keygen(std::size_t modulus_bits, RandomSource& rng, std::size_t max_attempts) {
  if (modulus_bits < 8 || modulus_bits % 2 != 0) {
    fail(ErrorCode::kInvalidArgument, "modulus size must be even and at least 8 bits");
  }
  const std::size_t half = modulus_bits / 2;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    mpz_class p = candidate_prime(rng, half);
    mpz_class q = candidate_prime(rng, half);
    if (bit_length(p) != half || bit_length(q) != half || p == q) continue;
    const mpz_class n = p * q;
    if (bit_length(n) != modulus_bits) continue;
    mpz_class g;
    const mpz_class phi = (p - 1) * (q - 1);
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), phi.get_mpz_t());
    if (g != 1) continue;
    PaillierKeyPair kp;
    kp.sec = make_secret(p, q);
    kp.pub = kp.sec.public_key();
    return kp;
  }
  fail(ErrorCode::kPrimeGenerationFailure,
       "no valid prime pair for a " + std::to_string(modulus_bits) + "-bit modulus after " +
           std::to_string(max_attempts) + " attempts");
}

PaillierKeyPair paillier_from_primes(const mpz_class& p, const mpz_class& q) {
  if (p == q) fail(ErrorCode::kMalformedKey, "primes must be distinct");
  if (!is_prime(p) || !is_prime(q)) fail(ErrorCode::kMalformedKey, "factor is not prime");
  mpz_class g;
  const mpz_class n = p * q;
  const mpz_class phi = (p - 1) * (q - 1);
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), phi.get_mpz_t());
  if (g != 1) fail(ErrorCode::kMalformedKey, "gcd(n, phi(n)) != 1");
  PaillierKeyPair kp;
  kp.sec = make_secret(p, q);
  kp.pub = kp.sec.public_key();
  return kp;
}

SlotLayout default_layout(const PaillierPublicKey& pk) { return SlotLayout{1, pk.modulus_bits()}; }

PaillierPublic::PaillierPublic(PaillierPublicKey key, SlotLayout layout,
                               std::shared_ptr<RandomSource> rng, EncryptionMode mode)
    : key_(std::move(key)), layout_(layout), rng_(std::move(rng)), mode_(mode) {
  if (key_.n < 6) fail(ErrorCode::kMalformedKey, "modulus too small");
  if (key_.n_squared != key_.n * key_.n) key_.n_squared = key_.n * key_.n;
  if (layout_.slot_count == 0 || layout_.slot_bits == 0) {
    fail(ErrorCode::kInvalidArgument, "slot layout must be nonempty");
  }
  if (layout_.slot_count * layout_.slot_bits > key_.modulus_bits()) {
    fail(ErrorCode::kSlotOverflow, "slot layout wider than the modulus");
  }
  if (!rng_) fail(ErrorCode::kInvalidArgument, "encryption needs a random source");
  key_id_ = key_.fingerprint();
  ct_bytes_ = 2 * ((key_.modulus_bits() + 7) / 8);
  if (mode_ == EncryptionMode::kFixedBase) {
    const mpz_class y = random_below(*rng_, key_.n - 1) + 1;
    mpz_class h = key_.n - (y * y) % key_.n;
    const mpz_class hs = powm(h, key_.n, key_.n_squared);
    exponent_bits_ = (key_.modulus_bits() + 1) / 2;
    const std::size_t windows = (exponent_bits_ + kWindowBits - 1) / kWindowBits;
    table_.assign(windows, std::vector<mpz_class>(std::size_t{1} << kWindowBits));
    mpz_class base = hs;
    for (std::size_t w = 0; w < windows; ++w) {
      auto& row = table_[w];
      row[0] = 1;
      for (std::size_t j = 1; j < row.size(); ++j) {
        row[j] = (row[j - 1] * base) % key_.n_squared;
      }
      base = (row.back() * base) % key_.n_squared;
    }
  }
}

PaillierPublic::~PaillierPublic() = default;

BackendDescriptor PaillierPublic::descriptor() const {
  return BackendDescriptor{BackendKind::kPaillier, layout_.slot_count, layout_.slot_bits, ct_bytes_};
}

mpz_class PaillierPublic::pack_slots(const Plaintext& slots) const {
  if (slots.size() > layout_.slot_count) {
    fail(ErrorCode::kSlotOverflow, std::to_string(slots.size()) + " slots exceed the layout");
  }
  mpz_class m = 0;
  for (std::size_t j = slots.size(); j-- > 0;) {
    const mpz_class& s = slots[j];
    if (sgn(s) < 0 || bit_length(s) > layout_.slot_bits) {
      fail(ErrorCode::kSlotOverflow, "slot value does not fit in " + std::to_string(layout_.slot_bits) + " bits");
    }
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), layout_.slot_bits);
    m += s;
  }
  if (m >= key_.n) fail(ErrorCode::kSlotOverflow, "plaintext not below the modulus");
  return m;
}

mpz_class PaillierPublic::random_mask() const {
  if (mode_ == EncryptionMode::kFixedBase) {
    const mpz_class a = random_below(*rng_, mpz_class(1) << static_cast<mp_bitcnt_t>(exponent_bits_));
    mpz_class acc = 1;
    mpz_class window;
    for (std::size_t w = 0; w < table_.size(); ++w) {
      mpz_fdiv_q_2exp(window.get_mpz_t(), a.get_mpz_t(), w * kWindowBits);
      mpz_fdiv_r_2exp(window.get_mpz_t(), window.get_mpz_t(), kWindowBits);
      const unsigned long j = window.get_ui();
      if (j == 0) continue;
      acc *= table_[w][j];
      acc %= key_.n_squared;
    }
    return acc;
  }
  mpz_class r;
  mpz_class g;
  for (;;) {
    r = random_below(*rng_, key_.n - 1) + 1;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), key_.n.get_mpz_t());
    if (g == 1) break;
  }
  return powm(r, key_.n, key_.n_squared);
}

Ciphertext PaillierPublic::encrypt_packed(const mpz_class& m) const {
  if (sgn(m) < 0 || m >= key_.n) fail(ErrorCode::kSlotOverflow, "plaintext outside [0, n)");
  counters().count_encryption();
  mpz_class c = (1 + m * key_.n) % key_.n_squared;
  c *= random_mask();
  c %= key_.n_squared;
  return Ciphertext{key_id_, std::move(c)};
}

Ciphertext PaillierPublic::encrypt(const Plaintext& slots) const {
  return encrypt_packed(pack_slots(slots));
}

Ciphertext PaillierPublic::encrypt_zero() const { return encrypt_packed(0); }

Ciphertext PaillierPublic::add(const Ciphertext& a, const Ciphertext& b) const {
  Ciphertext out = a;
  add_inplace(out, b);
  return out;
}

void PaillierPublic::add_inplace(Ciphertext& acc, const Ciphertext& b) const {
  check_key(acc);
  check_key(b);
  counters().count_addition();
  auto& x = std::get<mpz_class>(acc.payload);
  x *= std::get<mpz_class>(b.payload);
  x %= key_.n_squared;
}

Ciphertext PaillierPublic::scalar_mul(const mpz_class& c, const Ciphertext& ct) const {
  check_key(ct);
  if (sgn(c) < 0) fail(ErrorCode::kInvalidArgument, "scalar must be nonnegative");
  counters().count_scalar_mul();
  return Ciphertext{key_id_, powm(std::get<mpz_class>(ct.payload), c, key_.n_squared)};
}

std::vector<std::uint8_t> PaillierPublic::to_fixed_bytes(const Ciphertext& ct) const {
  check_key(ct);
  return to_bytes_fixed(std::get<mpz_class>(ct.payload), ct_bytes_);
}

std::vector<std::uint8_t> PaillierPublic::to_wire_bytes(const Ciphertext& ct) const {
  check_key(ct);
  return to_bytes(std::get<mpz_class>(ct.payload));
}

Ciphertext PaillierPublic::from_bytes(const std::uint8_t* data, std::size_t len) const {
  if (len > ct_bytes_) fail(ErrorCode::kKeyMismatch, "ciphertext wider than this key allows");
  mpz_class v = idface::from_bytes(data, len);
  if (v == 0 || v >= key_.n_squared) fail(ErrorCode::kKeyMismatch, "ciphertext outside Z_{n^2}");
  return Ciphertext{key_id_, std::move(v)};
}

PaillierSecret::PaillierSecret(PaillierSecretKey key, std::shared_ptr<const PaillierPublic> pub)
    : key_(std::move(key)), pub_(std::move(pub)) {
  if (!pub_ || pub_->key().n != key_.n) fail(ErrorCode::kKeyMismatch, "public and secret keys differ");
  if (key_.has_factors()) {
    if (key_.p * key_.q != key_.n) fail(ErrorCode::kMalformedKey, "factors do not multiply to n");
    p2_ = key_.p * key_.p;
    q2_ = key_.q * key_.q;
    const mpz_class g = key_.n + 1;
    // h_p = L_p(g^(p-1) mod p^2)^-1 mod p, likewise for q.
    hp_ = invert((powm(g, key_.p - 1, p2_) - 1) / key_.p, key_.p);
    hq_ = invert((powm(g, key_.q - 1, q2_) - 1) / key_.q, key_.q);
    q_inv_p_ = invert(key_.q % key_.p, key_.p);
  }
}

mpz_class PaillierSecret::decrypt_packed(const Ciphertext& ct) const {
  if (ct.key_id != pub_->key_id()) fail(ErrorCode::kKeyMismatch, "ciphertext belongs to a different key");
  counters().count_decryption();
  const auto& c = std::get<mpz_class>(ct.payload);
  if (key_.has_factors()) {
    mpz_class mp = (powm(c % p2_, key_.p - 1, p2_) - 1) / key_.p;
    mp = (mp * hp_) % key_.p;
    mpz_class mq = (powm(c % q2_, key_.q - 1, q2_) - 1) / key_.q;
    mq = (mq * hq_) % key_.q;
    mpz_class t = ((mp - mq) * q_inv_p_) % key_.p;
    if (sgn(t) < 0) t += key_.p;
    return mq + t * key_.q;
  }
  const mpz_class& n2 = pub_->key().n_squared;
  mpz_class u = (powm(c, key_.lambda, n2) - 1) / key_.n;
  return (u * key_.mu) % key_.n;
}

Plaintext PaillierSecret::decrypt(const Ciphertext& ct) const {
  const mpz_class m = decrypt_packed(ct);
  const SlotLayout& layout = pub_->layout();
  Plaintext out(layout.slot_count);
  mpz_class rest = m;
  for (std::size_t j = 0; j < layout.slot_count; ++j) {
    mpz_fdiv_r_2exp(out[j].get_mpz_t(), rest.get_mpz_t(), layout.slot_bits);
    mpz_fdiv_q_2exp(rest.get_mpz_t(), rest.get_mpz_t(), layout.slot_bits);
  }
  return out;
}

}  // namespace idface::ahe
