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

#include "idface/ahe/scheme.hpp"

#include "idface/error.hpp"

namespace idface::ahe {

std::string backend_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::kPaillier: return "paillier";
    case BackendKind::kSimulatedSimd: return "simulated-simd";
  }
  return "unknown";
}

BackendKind parse_backend(const std::string& name) {
  if (name == "paillier") return BackendKind::kPaillier;
  if (name == "simulated-simd" || name == "mock") return BackendKind::kSimulatedSimd;
  fail(ErrorCode::kInvalidArgument, "unknown backend '" + name + "'");
}

OpCountSnapshot OpCounters::snapshot() const {
  OpCountSnapshot s;
  s.encryptions = encryptions_.load();
  s.decryptions = decryptions_.load();
  s.additions = additions_.load();
  s.scalar_muls = scalar_muls_.load();
  s.rotations = 0;  // no backend implements rotations
  return s;
}

void OpCounters::reset() {
  encryptions_ = 0;
  decryptions_ = 0;
  additions_ = 0;
  scalar_muls_ = 0;
}

void PublicScheme::add_inplace(Ciphertext& acc, const Ciphertext& b) const {
  acc = add(acc, b);
}

void PublicScheme::check_key(const Ciphertext& ct) const {
  if (ct.key_id != key_id()) fail(ErrorCode::kKeyMismatch, "ciphertext belongs to a different key");
}

}  // namespace idface::ahe
