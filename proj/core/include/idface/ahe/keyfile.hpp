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

#ifndef IDFACE_AHE_KEYFILE_HPP_
#define IDFACE_AHE_KEYFILE_HPP_

#include <string>

#include "idface/ahe/paillier.hpp"

namespace idface::ahe {

// Text key files, one "name hex" pair per line after a header line:
//
//   idface-paillier-secret v1      idface-paillier-public v1
//   n <hex>                        n <hex>
//   lambda <hex>
//   mu <hex>
//   p <hex>        (optional)
//   q <hex>        (optional)
//
// Secret key files are created with mode 0600.
void write_secret_key(const std::string& path, const PaillierSecretKey& sk);
void write_public_key(const std::string& path, const PaillierPublicKey& pk);
PaillierSecretKey read_secret_key(const std::string& path);
PaillierPublicKey read_public_key(const std::string& path);

std::string format_secret_key(const PaillierSecretKey& sk);
std::string format_public_key(const PaillierPublicKey& pk);
PaillierSecretKey parse_secret_key(const std::string& text);
PaillierPublicKey parse_public_key(const std::string& text);

}  // namespace idface::ahe

#endif  // IDFACE_AHE_KEYFILE_HPP_
