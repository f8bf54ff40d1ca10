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

#include "idface/ahe/keyfile.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <fstream>
#include <map>
#include <sstream>

#include "idface/bigint.hpp"
#include "idface/error.hpp"

namespace idface::ahe {

namespace {

constexpr const char* kSecretHeader = "idface-paillier-secret v1";
constexpr const char* kPublicHeader = "idface-paillier-public v1";

std::map<std::string, mpz_class> parse_fields(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header) {
    fail(ErrorCode::kMalformedKey, "expected header '" + header + "'");
  }
  std::map<std::string, mpz_class> fields;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string name;
    std::string hex;
    if (!(ls >> name >> hex)) fail(ErrorCode::kMalformedKey, "bad key line '" + line + "'");
    if (!fields.emplace(name, from_hex(hex)).second) fail(ErrorCode::kMalformedKey, "repeated field " + name);
  }
  return fields;
}

const mpz_class& require(const std::map<std::string, mpz_class>& f, const std::string& name) {
  auto it = f.find(name);
  if (it == f.end()) fail(ErrorCode::kMalformedKey, "missing field " + name);
  return it->second;
}

void write_file(const std::string& path, const std::string& body, mode_t mode) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, mode);
  if (fd < 0) fail(ErrorCode::kIoFailure, "cannot create " + path);
  ::fchmod(fd, mode);
  std::size_t off = 0;
  while (off < body.size()) {
    const ssize_t w = ::write(fd, body.data() + off, body.size() - off);
    if (w <= 0) {
      ::close(fd);
      fail(ErrorCode::kIoFailure, "write to " + path + " failed");
    }
    off += static_cast<std::size_t>(w);
  }
  ::close(fd);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoFailure, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string format_secret_key(const PaillierSecretKey& sk) {
  std::ostringstream out;
  out << kSecretHeader << '\n';
  out << "n " << to_hex(sk.n) << '\n';
  out << "lambda " << to_hex(sk.lambda) << '\n';
  out << "mu " << to_hex(sk.mu) << '\n';
  if (sk.has_factors()) {
    out << "p " << to_hex(sk.p) << '\n';
    out << "q " << to_hex(sk.q) << '\n';
  }
  return out.str();
}

std::string format_public_key(const PaillierPublicKey& pk) {
  return std::string(kPublicHeader) + "\nn " + to_hex(pk.n) + "\n";
}

PaillierSecretKey parse_secret_key(const std::string& text) {
  const auto f = parse_fields(text, kSecretHeader);
  PaillierSecretKey sk;
  sk.n = require(f, "n");
  sk.lambda = require(f, "lambda");
  sk.mu = require(f, "mu");
  if (f.count("p") || f.count("q")) {
    sk.p = require(f, "p");
    sk.q = require(f, "q");
    if (sk.p * sk.q != sk.n) fail(ErrorCode::kMalformedKey, "p*q != n");
  }
  // lambda * mu = 1 mod n must hold for g = n + 1.
  if ((sk.lambda * sk.mu) % sk.n != 1) fail(ErrorCode::kMalformedKey, "lambda and mu are inconsistent");
  return sk;
}

PaillierPublicKey parse_public_key(const std::string& text) {
  const auto f = parse_fields(text, kPublicHeader);
  const mpz_class n = require(f, "n");
  if (n < 6) fail(ErrorCode::kMalformedKey, "modulus too small");
  return PaillierPublicKey{n, n * n};
}

void write_secret_key(const std::string& path, const PaillierSecretKey& sk) {
  write_file(path, format_secret_key(sk), 0600);
}

void write_public_key(const std::string& path, const PaillierPublicKey& pk) {
  write_file(path, format_public_key(pk), 0644);
}

PaillierSecretKey read_secret_key(const std::string& path) { return parse_secret_key(read_file(path)); }

PaillierPublicKey read_public_key(const std::string& path) { return parse_public_key(read_file(path)); }

}  // namespace idface::ahe
