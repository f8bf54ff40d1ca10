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

#include "idface/ahe/simulated_simd.hpp"

#include "idface/bigint.hpp"
#include "idface/error.hpp"

namespace idface::ahe {

std::shared_ptr<SimulatedSimd> SimulatedSimd::create(const std::string& mode, std::size_t slot_count,
                                                     std::size_t slot_bits, std::size_t ciphertext_bytes,
                                                     std::uint64_t key_id) {
  if (mode != kInsecureMockMode) {
    fail(ErrorCode::kInsecureModeRequired,
         "simulated SIMD backend provides no security; start it with mode \"insecure-mock\"");
  }
  if (slot_count == 0 || slot_bits == 0 || slot_bits > 63) {
    fail(ErrorCode::kInvalidArgument, "mock slots must be 1..63 bits wide");
  }
  if (ciphertext_bytes < slot_count * 8) {
    fail(ErrorCode::kInvalidArgument, "mock ciphertext too small for its slots");
  }
  return std::shared_ptr<SimulatedSimd>(new SimulatedSimd(slot_count, slot_bits, ciphertext_bytes, key_id));
}

SimulatedSimd::SimulatedSimd(std::size_t slot_count, std::size_t slot_bits, std::size_t ciphertext_bytes,
                             std::uint64_t key_id)
    : slot_count_(slot_count), slot_bits_(slot_bits), ciphertext_bytes_(ciphertext_bytes), key_id_(key_id) {}

BackendDescriptor SimulatedSimd::descriptor() const {
  return BackendDescriptor{BackendKind::kSimulatedSimd, slot_count_, slot_bits_, ciphertext_bytes_};
}

void SimulatedSimd::check_slot(std::uint64_t v) const {
  if ((v >> slot_bits_) != 0) {
    fail(ErrorCode::kSlotOverflow, "slot value exceeds " + std::to_string(slot_bits_) + " bits");
  }
}

Ciphertext SimulatedSimd::encrypt(const Plaintext& slots) const {
  if (slots.size() > slot_count_) fail(ErrorCode::kSlotOverflow, "too many slots");
  std::vector<std::uint64_t> v(slot_count_, 0);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (sgn(slots[i]) < 0 || bit_length(slots[i]) > slot_bits_) {
      fail(ErrorCode::kSlotOverflow, "slot value exceeds " + std::to_string(slot_bits_) + " bits");
    }
    v[i] = slots[i].get_ui();
  }
  PublicScheme::counters().count_encryption();
  return Ciphertext{key_id_, std::move(v)};
}

Ciphertext SimulatedSimd::encrypt_zero() const {
  PublicScheme::counters().count_encryption();
  return Ciphertext{key_id_, std::vector<std::uint64_t>(slot_count_, 0)};
}

Ciphertext SimulatedSimd::add(const Ciphertext& a, const Ciphertext& b) const {
  Ciphertext out = a;
  add_inplace(out, b);
  return out;
}

void SimulatedSimd::add_inplace(Ciphertext& acc, const Ciphertext& b) const {
  check_key(acc);
  check_key(b);
  PublicScheme::counters().count_addition();
  auto& x = std::get<std::vector<std::uint64_t>>(acc.payload);
  const auto& y = std::get<std::vector<std::uint64_t>>(b.payload);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] += y[i];
    check_slot(x[i]);
  }
}

Ciphertext SimulatedSimd::scalar_mul(const mpz_class& c, const Ciphertext& ct) const {
  check_key(ct);
  if (sgn(c) < 0 || bit_length(c) > slot_bits_) fail(ErrorCode::kSlotOverflow, "scalar too large");
  PublicScheme::counters().count_scalar_mul();
  const std::uint64_t k = c.get_ui();
  auto v = std::get<std::vector<std::uint64_t>>(ct.payload);
  for (auto& e : v) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(e) * k;
    if ((prod >> slot_bits_) != 0) fail(ErrorCode::kSlotOverflow, "scalar product overflows a slot");
    e = static_cast<std::uint64_t>(prod);
  }
  return Ciphertext{key_id_, std::move(v)};
}

std::vector<std::uint8_t> SimulatedSimd::to_fixed_bytes(const Ciphertext& ct) const {
  check_key(ct);
  std::vector<std::uint8_t> out;
  out.reserve(ciphertext_bytes_);
  for (std::uint64_t v : std::get<std::vector<std::uint64_t>>(ct.payload)) put_u64(out, v);
  out.resize(ciphertext_bytes_, 0);
  return out;
}

std::vector<std::uint8_t> SimulatedSimd::to_wire_bytes(const Ciphertext& ct) const {
  return to_fixed_bytes(ct);
}

Ciphertext SimulatedSimd::from_bytes(const std::uint8_t* data, std::size_t len) const {
  if (len != ciphertext_bytes_) fail(ErrorCode::kLengthMismatch, "mock ciphertext has the wrong size");
  std::vector<std::uint64_t> v(slot_count_);
  for (std::size_t i = 0; i < slot_count_; ++i) {
    v[i] = get_u64(data + 8 * i);
    check_slot(v[i]);
  }
  return Ciphertext{key_id_, std::move(v)};
}

Plaintext SimulatedSimd::decrypt(const Ciphertext& ct) const {
  check_key(ct);
  SecretScheme::counters().count_decryption();
  const auto& v = std::get<std::vector<std::uint64_t>>(ct.payload);
  Plaintext out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_import(out[i].get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &v[i]);
  }
  return out;
}

std::shared_ptr<const PublicScheme> SimulatedSimd::public_scheme() const {
  return std::static_pointer_cast<const PublicScheme>(shared_from_this());
}

}  // namespace idface::ahe
